#include "shalika/padic.hpp"

#include <atomic>
#include <cmath>
#include <numeric>

namespace shalika {

namespace detail {

uint64_t pow_u64(uint64_t base, unsigned e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t inv_mod_pk(uint64_t a, uint64_t pk) {
    // Newton iteration x <- x(2 - ax) doubles correct digits.
    uint64_t x = 1;
    for (int i = 0; i < 7; ++i) {
        unsigned __int128 ax = static_cast<unsigned __int128>(a) * x % pk;
        unsigned __int128 t = (2 + pk - static_cast<uint64_t>(ax)) % pk;
        x = static_cast<uint64_t>(static_cast<unsigned __int128>(x) * t % pk);
    }
    return x;
}

}  // namespace detail

namespace {
std::atomic<int> g_min_prec_floor{4};
}

int Padic::max_digits(uint32_t p) {
    // p^n < 2^62
    switch (p) {
        case 2: return 61;
        case 3: return 39;
        case 5: return 26;
        case 7: return 22;
        default: {
            int n = 0;
            long double acc = 1.0L;
            while (acc * p < std::ldexp(1.0L, 62)) {
                acc *= p;
                ++n;
            }
            return n;
        }
    }
}

int Padic::min_precision_floor() { return g_min_prec_floor.load(); }
void Padic::set_min_precision_floor(int floor) { g_min_prec_floor.store(floor); }

void Padic::require_same_prime(const Padic& o) const {
    if (p_ != o.p_) throw domain_error("p-adic operands over different primes");
}

Padic Padic::zero_at(uint32_t p, int32_t abs_prec) {
    Padic z(p);
    z.zero_abs_ = abs_prec;
    return z;
}

Padic Padic::from_unit(uint32_t p, uint64_t u, int32_t v, int prec) {
    if (prec <= 0) throw domain_error("nonpositive precision");
    if (prec > max_digits(p)) prec = max_digits(p);
    uint64_t pk = detail::pow_u64(p, static_cast<unsigned>(prec));
    u %= pk;
    if (u == 0) return zero_at(p, v + prec);
    // normalize: strip p-factors into the valuation
    while (u % p == 0) {
        u /= p;
        ++v;
        --prec;
    }
    if (prec < min_precision_floor())
        throw precision_error("p-adic mantissa below precision floor");
    Padic r(p);
    r.zero_ = false;
    r.v_ = v;
    r.u_ = u % detail::pow_u64(p, static_cast<unsigned>(prec));
    r.prec_ = static_cast<int16_t>(prec);
    r.zero_abs_ = 0;
    return r;
}

Padic Padic::from_int(uint32_t p, long long n, int prec) {
    if (prec < 0) prec = max_digits(p);
    if (n == 0) return zero(p);
    bool neg = n < 0;
    unsigned long long m = neg ? -static_cast<unsigned long long>(n)
                               : static_cast<unsigned long long>(n);
    int32_t v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    if (prec > max_digits(p)) prec = max_digits(p);
    uint64_t pk = detail::pow_u64(p, static_cast<unsigned>(prec));
    uint64_t u = static_cast<uint64_t>(m % pk);
    if (neg) u = (pk - u) % pk;
    return from_unit(p, u, v, prec);
}

Padic Padic::from_rational(uint32_t p, long long num, long long den, int prec) {
    if (den == 0) throw domain_error("zero denominator");
    Padic a = from_int(p, num, prec);
    Padic b = from_int(p, den, prec);
    return a / b;
}

int32_t Padic::val() const {
    if (zero_) throw precision_error("valuation of zero requested");
    return v_;
}

int32_t Padic::val_or_infinity() const {
    if (!zero_) return v_;
    if (zero_abs_ == kExactZero) return kExactZero;
    throw precision_error("valuation undecidable: cancellation zero");
}

uint64_t Padic::mantissa() const {
    if (zero_) throw precision_error("mantissa of zero requested");
    return u_;
}

uint64_t Padic::shifted_residue(int shift, int k) const {
    if (k <= 0) return 0;
    uint64_t pk = detail::pow_u64(p_, static_cast<unsigned>(k));
    if (zero_) {
        if (zero_abs_ != kExactZero && zero_abs_ + shift < k)
            throw precision_error("residue below absolute precision of zero");
        return 0;
    }
    long long e = static_cast<long long>(v_) + shift;
    if (e >= k) return 0;
    if (e < 0) throw domain_error("shifted value is not integral");
    if (prec_ < k - e) throw precision_error("residue needs more digits than tracked");
    uint64_t u = u_ % detail::pow_u64(p_, static_cast<unsigned>(k - e));
    return u * detail::pow_u64(p_, static_cast<unsigned>(e)) % pk;
}

Padic Padic::operator-() const {
    if (zero_) return *this;
    Padic r = *this;
    uint64_t pk = detail::pow_u64(p_, static_cast<unsigned>(prec_));
    r.u_ = (pk - u_) % pk;
    return r;
}

Padic Padic::operator+(const Padic& o) const {
    require_same_prime(o);
    if (zero_ && o.zero_) {
        if (zero_abs_ == kExactZero && o.zero_abs_ == kExactZero) return zero(p_);
        return zero_at(p_, std::min(zero_abs_, o.zero_abs_));
    }
    if (zero_) {
        if (zero_abs_ == kExactZero) return o;
        if (o.v_ >= zero_abs_) return zero_at(p_, zero_abs_);
        int np = std::min<int>(o.prec_, zero_abs_ - o.v_);
        return from_unit(p_, o.u_, o.v_, np);
    }
    if (o.zero_) return o + *this;

    int32_t v = std::min(v_, o.v_);
    long long abs = std::min<long long>(abs_prec(), o.abs_prec());
    if (v >= abs) return zero_at(p_, static_cast<int32_t>(abs));
    int k = static_cast<int>(abs - v);  // digits visible at the common scale
    if (k > max_digits(p_)) {
        k = max_digits(p_);
        abs = v + k;
    }
    uint64_t pk = detail::pow_u64(p_, static_cast<unsigned>(k));
    uint64_t a = detail::mul_mod(u_ % pk, detail::pow_u64(p_, static_cast<unsigned>(v_ - v)) % pk, pk);
    uint64_t b = detail::mul_mod(o.u_ % pk, detail::pow_u64(p_, static_cast<unsigned>(o.v_ - v)) % pk, pk);
    uint64_t s = (a + b) % pk;
    if (s == 0) return zero_at(p_, static_cast<int32_t>(abs));
    return from_unit(p_, s, v, k);
}

Padic Padic::operator*(const Padic& o) const {
    require_same_prime(o);
    if (zero_ || o.zero_) {
        if ((zero_ && zero_abs_ == kExactZero) || (o.zero_ && o.zero_abs_ == kExactZero))
            return zero(p_);
        // (0 mod p^A) * (u p^v) = 0 mod p^(A+v)
        long long abs;
        if (zero_ && o.zero_)
            abs = std::min<long long>(zero_abs_ + o.zero_abs_, kExactZero - 1);
        else if (zero_)
            abs = static_cast<long long>(zero_abs_) + o.v_;
        else
            abs = static_cast<long long>(o.zero_abs_) + v_;
        return zero_at(p_, static_cast<int32_t>(abs));
    }
    int np = std::min(prec_, o.prec_);
    uint64_t pk = detail::pow_u64(p_, static_cast<unsigned>(np));
    uint64_t u = detail::mul_mod(u_ % pk, o.u_ % pk, pk);
    return from_unit(p_, u, v_ + o.v_, np);
}

Padic Padic::inv() const {
    if (zero_) throw domain_error("inverse of zero");
    uint64_t pk = detail::pow_u64(p_, static_cast<unsigned>(prec_));
    Padic r(p_);
    r.zero_ = false;
    r.v_ = -v_;
    r.u_ = detail::inv_mod_pk(u_, pk);
    r.prec_ = prec_;
    return r;
}

Padic Padic::operator/(const Padic& o) const {
    require_same_prime(o);
    if (o.zero_) {
        if (o.zero_abs_ == kExactZero) throw domain_error("division by zero");
        throw precision_error("division by cancellation zero");
    }
    return *this * o.inv();
}

Padic Padic::pow(int e) const {
    if (e == 0) return from_int(p_, 1, zero_ ? -1 : prec_);
    if (zero_) {
        if (e < 0) throw domain_error("negative power of zero");
        if (zero_abs_ == kExactZero) return *this;
        return zero_at(p_, zero_abs_);  // conservative
    }
    Padic base = e > 0 ? *this : inv();
    unsigned n = static_cast<unsigned>(e > 0 ? e : -e);
    Padic acc = from_int(p_, 1, prec_);
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Padic Padic::truncated(int n) const {
    if (zero_ || n >= prec_) return *this;
    if (n < min_precision_floor()) throw precision_error("truncation below floor");
    return from_unit(p_, u_ % detail::pow_u64(p_, static_cast<unsigned>(n)), v_, n);
}

bool Padic::equals(const Padic& o) const {
    require_same_prime(o);
    long long abs = std::min<long long>(abs_prec(), o.abs_prec());
    if (zero_ && o.zero_) return true;  // both vanish to the shared depth
    if (zero_ != o.zero_) {
        const Padic& nz = zero_ ? o : *this;
        return nz.v_ >= abs;  // nonzero part invisible at shared depth
    }
    if (v_ != o.v_) {
        return std::min(v_, o.v_) >= abs;
    }
    if (v_ >= abs) return true;
    int k = static_cast<int>(abs - v_);
    uint64_t pk = detail::pow_u64(p_, static_cast<unsigned>(k));
    return (u_ % pk) == (o.u_ % pk);
}

bool val_ge(const Padic& x, int bound) {
    if (x.zero_) {
        if (x.zero_abs_ == Padic::kExactZero) return true;
        if (x.zero_abs_ >= bound) return true;
        throw precision_error("valuation comparison undecidable at this precision");
    }
    return x.v_ >= bound;
}

std::string Padic::str() const {
    if (zero_) {
        if (zero_abs_ == kExactZero) return "0";
        return "O(" + std::to_string(p_) + "^" + std::to_string(zero_abs_) + ")";
    }
    return std::to_string(u_) + "*" + std::to_string(p_) + "^" + std::to_string(v_) +
           " + O(" + std::to_string(p_) + "^" + std::to_string(v_ + prec_) + ")";
}

}  // namespace shalika
