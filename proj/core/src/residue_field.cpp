#include "shalika/residue_field.hpp"

#include <map>
#include <mutex>

namespace shalika {

namespace {
// polynomial helpers over F_p, coefficient vectors little-endian
std::vector<uint32_t> poly_mulmod(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                  const std::vector<uint32_t>& f, uint32_t p) {
    uint32_t d = static_cast<uint32_t>(f.size());
    std::vector<uint32_t> c(2 * d, 0);
    for (uint32_t i = 0; i < d; ++i) {
        if (!a[i]) continue;
        for (uint32_t j = 0; j < d; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    // reduce: X^d = -f_low
    for (uint32_t i = 2 * d; i-- > d;) {
        uint32_t coef = c[i];
        if (!coef) continue;
        c[i] = 0;
        for (uint32_t j = 0; j < d; ++j)
            c[i - d + j] = (c[i - d + j] + coef * (p - f[j])) % p;
    }
    c.resize(d);
    return c;
}

std::vector<uint32_t> poly_powmod(std::vector<uint32_t> base, uint64_t e,
                                  const std::vector<uint32_t>& f, uint32_t p) {
    uint32_t d = static_cast<uint32_t>(f.size());
    std::vector<uint32_t> acc(d, 0);
    acc[0] = 1;
    while (e) {
        if (e & 1) acc = poly_mulmod(acc, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return acc;
}
}  // namespace

bool ResidueField::is_irreducible(uint32_t p, const std::vector<uint32_t>& low) {
    uint32_t d = static_cast<uint32_t>(low.size());
    if (d == 1) return true;
    // Rabin: X^{p^d} == X mod f, and X^{p^{d/q}} != X for prime divisors q of d.
    std::vector<uint32_t> x(d, 0);
    if (d >= 2) x[1] = 1;
    auto frob = [&](unsigned k) {  // X^{p^k} mod f
        std::vector<uint32_t> t = x;
        for (unsigned i = 0; i < k; ++i) t = poly_powmod(t, p, low, p);
        return t;
    };
    if (frob(d) != x) return false;
    for (uint32_t q = 2; q <= d; ++q) {
        if (d % q) continue;
        bool isprime = true;
        for (uint32_t r = 2; r * r <= q; ++r)
            if (q % r == 0) isprime = false;
        if (!isprime) continue;
        if (frob(d / q) == x) return false;
    }
    return true;
}

ResidueField::ResidueField(uint32_t p, const std::vector<uint32_t>& modulus) : p_(p) {
    d_ = static_cast<uint32_t>(modulus.size());
    if (d_ != 1 && d_ != 2 && d_ != 4) throw domain_error("residue field degree must be 1, 2, or 4");
    f_.resize(d_);
    for (uint32_t i = 0; i < d_; ++i) f_[i] = modulus[i] % p;
    if (!is_irreducible(p_, f_)) throw domain_error("defining polynomial is reducible mod p");
    q_ = 1;
    for (uint32_t i = 0; i < d_; ++i) q_ *= p_;

    // find the lexicographically smallest primitive element (coefficient
    // tuples ordered by (c0, c1, ...)), i.e. smallest index
    dlog_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    for (uint32_t cand = 1; cand < q_; ++cand) {
        uint32_t x = cand;
        uint32_t ord = 1;
        std::vector<uint32_t> seen;
        seen.push_back(x);
        while (x != 1 && ord <= q_) {
            x = mul(x, cand);
            if (x != 1) seen.push_back(x);
            ++ord;
        }
        if (ord == q_ - 1) {
            gen_ = cand;
            uint32_t e = 0;
            uint32_t y = 1;
            for (e = 0; e < q_ - 1; ++e) {
                dlog_[y] = e;
                exp_[e] = y;
                y = mul(y, gen_);
            }
            break;
        }
    }
    if (!gen_) throw domain_error("no primitive element found");
}

std::shared_ptr<const ResidueField> ResidueField::prime_field(uint32_t p) {
    static std::map<uint32_t, std::shared_ptr<const ResidueField>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    // X - 1 works as a degree-1 modulus (any monic linear is fine)
    auto F = std::make_shared<ResidueField>(p, std::vector<uint32_t>{p - 1});
    cache[p] = F;
    return F;
}

uint32_t ResidueField::encode(const std::vector<uint32_t>& coeffs) const {
    uint32_t idx = 0, scale = 1;
    for (uint32_t i = 0; i < d_; ++i) {
        idx += (coeffs[i] % p_) * scale;
        scale *= p_;
    }
    return idx;
}

std::vector<uint32_t> ResidueField::decode(uint32_t idx) const {
    std::vector<uint32_t> c(d_);
    for (uint32_t i = 0; i < d_; ++i) {
        c[i] = idx % p_;
        idx /= p_;
    }
    return c;
}

uint32_t ResidueField::coeff(uint32_t idx, uint32_t i) const {
    for (uint32_t k = 0; k < i; ++k) idx /= p_;
    return idx % p_;
}

uint32_t ResidueField::add(uint32_t a, uint32_t b) const {
    uint32_t r = 0, scale = 1;
    for (uint32_t i = 0; i < d_; ++i) {
        r += ((a % p_) + (b % p_)) % p_ * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return r;
}

uint32_t ResidueField::neg(uint32_t a) const {
    uint32_t r = 0, scale = 1;
    for (uint32_t i = 0; i < d_; ++i) {
        r += (p_ - a % p_) % p_ * scale;
        a /= p_;
        scale *= p_;
    }
    return r;
}

uint32_t ResidueField::mul(uint32_t a, uint32_t b) const {
    std::vector<uint32_t> av = decode(a), bv = decode(b);
    return encode(poly_mulmod(av, bv, f_, p_));
}

uint32_t ResidueField::pow(uint32_t a, uint64_t e) const {
    uint32_t acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

uint32_t ResidueField::inv(uint32_t a) const {
    if (!a) throw domain_error("inverse of 0 in residue field");
    return pow(a, q_ - 2);
}

uint32_t ResidueField::x_class() const {
    if (d_ == 1) {
        // X = f0-root: the class of X is the root of the linear modulus,
        // i.e. -f0 = f_[0] subtracted from X ... for degree one, X == -f0.
        return (p_ - f_[0]) % p_;
    }
    return encode([&] {
        std::vector<uint32_t> c(d_, 0);
        c[1] = 1;
        return c;
    }());
}

uint32_t ResidueField::dlog(uint32_t a) const {
    if (!a) throw domain_error("dlog of 0");
    return dlog_[a];
}

uint32_t ResidueField::norm_to_prime(uint32_t a) const {
    if (!a) return 0;
    uint32_t n = pow(a, (q_ - 1) / (p_ - 1));
    return n % p_;  // scalar lives in the constant coefficient
}

RootOfUnity MultChar::value_root(uint32_t x_idx) const {
    if (!x_idx) throw domain_error("character evaluated at 0");
    uint64_t n = F->q() - 1;
    uint64_t e = (static_cast<uint64_t>(t) % n) * F->dlog(x_idx) % n;
    return RootOfUnity::make(static_cast<uint32_t>(n), static_cast<long long>(e));
}

MultChar MultChar::times(const MultChar& o) const {
    if (F->q() != o.F->q()) throw domain_error("character product across fields");
    return MultChar{F, (t + o.t) % (F->q() - 1)};
}

Cyc char_eval(const MultChar& chi, const FFElem& x) {
    if (x.is_zero()) throw domain_error("char_eval at 0");
    return chi(x);
}

}  // namespace shalika
