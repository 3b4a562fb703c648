#include "shalika/cyclotomic.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace shalika {

namespace {
std::atomic<uint32_t> g_max_conductor{20160};

uint64_t gcd_u(uint64_t a, uint64_t b) { return std::gcd(a, b); }

// Exact division of integer polynomials, used for Phi_m = (X^m - 1) / prod.
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::vector<BigInt> q(num.size() - den.size() + 1, BigInt(0));
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
        BigInt coef = num[i] / den.back();
        int shift = i - static_cast<int>(den.size()) + 1;
        q[shift] = coef;
        if (coef != 0)
            for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= coef * den[j];
    }
    return q;
}
}  // namespace

uint32_t Cyc::max_conductor() { return g_max_conductor.load(); }
void Cyc::set_max_conductor(uint32_t m) { g_max_conductor.store(m); }

void Cyc::check_conductor(uint32_t m) const {
    if (m == 0 || m > max_conductor())
        throw domain_error("cyclotomic conductor " + std::to_string(m) + " beyond configured bound");
}

RootOfUnity RootOfUnity::make(uint32_t m, long long e) {
    long long em = e % static_cast<long long>(m);
    if (em < 0) em += m;
    uint64_t g = gcd_u(static_cast<uint64_t>(em), m);
    if (em == 0) return RootOfUnity{1, 0};
    return RootOfUnity{static_cast<uint32_t>(m / g), static_cast<uint32_t>(em / g)};
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    uint64_t L = std::lcm<uint64_t>(m, o.m);
    long long e2 = static_cast<long long>(e) * (L / m) + static_cast<long long>(o.e) * (L / o.m);
    return make(static_cast<uint32_t>(L), e2);
}

RootOfUnity RootOfUnity::pow(long long k) const {
    long long kk = k % static_cast<long long>(m);
    return make(m, static_cast<long long>(e) * kk);
}

const std::vector<long long>& Cyc::cyclotomic_poly(uint32_t m) {
    static std::map<uint32_t, std::vector<long long>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<BigInt> num(m + 1, BigInt(0));
    num[0] = -1;
    num[m] = 1;
    std::vector<BigInt> den{BigInt(1)};  // product accumulator
    for (uint32_t d = 1; d < m; ++d) {
        if (m % d) continue;
        const auto& phd = cyclotomic_poly(d);
        std::vector<BigInt> nd(den.size() + phd.size() - 1, BigInt(0));
        for (size_t i = 0; i < den.size(); ++i)
            for (size_t j = 0; j < phd.size(); ++j) nd[i + j] += den[i] * phd[j];
        den = std::move(nd);
    }
    std::vector<BigInt> q = poly_div_exact(std::move(num), den);
    std::vector<long long> out;
    out.reserve(q.size());
    for (auto& c : q) out.push_back(static_cast<long long>(c));
    auto [pos, _] = cache.emplace(m, std::move(out));
    return pos->second;
}

Cyc Cyc::root(uint32_t m, long long e) {
    RootOfUnity z = RootOfUnity::make(m, e);
    Cyc r;
    r.check_conductor(z.m);
    r.m_ = z.m;
    r.c_.assign(z.m, Rat(0));
    r.c_[z.e] = 1;
    return r;
}

Cyc Cyc::monomial(const Rat& coeff, uint32_t m, long long e) {
    Cyc r = root(m, e);
    for (auto& c : r.c_) c *= coeff;
    return r;
}

Cyc Cyc::embedded(uint32_t M) const {
    check_conductor(M);
    if (M == m_) return *this;
    if (M % m_ != 0) throw domain_error("conductor embedding requires divisibility");
    Cyc r;
    r.m_ = M;
    r.c_.assign(M, Rat(0));
    uint32_t s = M / m_;
    for (uint32_t k = 0; k < m_; ++k)
        if (c_[k] != 0) r.c_[k * s] = c_[k];
    return r;
}

Cyc Cyc::operator+(const Cyc& o) const {
    uint64_t L = std::lcm<uint64_t>(m_, o.m_);
    check_conductor(static_cast<uint32_t>(L));
    Cyc a = embedded(static_cast<uint32_t>(L));
    Cyc b = o.embedded(static_cast<uint32_t>(L));
    for (uint32_t k = 0; k < a.m_; ++k) a.c_[k] += b.c_[k];
    return a;
}

Cyc Cyc::operator-() const {
    Cyc r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
    uint64_t L = std::lcm<uint64_t>(m_, o.m_);
    check_conductor(static_cast<uint32_t>(L));
    Cyc a = embedded(static_cast<uint32_t>(L));
    Cyc b = o.embedded(static_cast<uint32_t>(L));
    // monomial fast path
    auto single = [](const Cyc& x) -> int {
        int idx = -1;
        for (uint32_t k = 0; k < x.m_; ++k)
            if (x.c_[k] != 0) {
                if (idx >= 0) return -2;
                idx = static_cast<int>(k);
            }
        return idx;
    };
    int ia = single(a);
    if (ia == -1) return Cyc::zero().embedded(static_cast<uint32_t>(L));
    int ib = single(b);
    if (ib == -1) return Cyc::zero().embedded(static_cast<uint32_t>(L));
    Cyc r;
    r.m_ = static_cast<uint32_t>(L);
    r.c_.assign(r.m_, Rat(0));
    if (ia >= 0) {
        const Rat& ca = a.c_[ia];
        for (uint32_t k = 0; k < b.m_; ++k)
            if (b.c_[k] != 0) r.c_[(k + ia) % r.m_] += ca * b.c_[k];
        return r;
    }
    if (ib >= 0) return b * a;
    for (uint32_t i = 0; i < a.m_; ++i) {
        if (a.c_[i] == 0) continue;
        for (uint32_t j = 0; j < b.m_; ++j)
            if (b.c_[j] != 0) r.c_[(i + j) % r.m_] += a.c_[i] * b.c_[j];
    }
    return r;
}

Cyc Cyc::operator*(const Rat& s) const {
    Cyc r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

void Cyc::add_monomial(const Rat& coeff, uint32_t m, long long e) {
    RootOfUnity z = RootOfUnity::make(m, e);
    if (m_ % z.m != 0) {
        *this = embedded(static_cast<uint32_t>(std::lcm<uint64_t>(m_, z.m)));
    }
    c_[static_cast<uint64_t>(z.e) * (m_ / z.m) % m_] += coeff;
}

Cyc Cyc::pow(long long k) const {
    if (k < 0) throw domain_error("negative Cyc power unsupported");
    Cyc acc = Cyc::one();
    Cyc base = *this;
    unsigned long long n = static_cast<unsigned long long>(k);
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Cyc Cyc::canonical() const {
    // Reduce the representing polynomial modulo Phi_m.
    const auto& phi = cyclotomic_poly(m_);
    size_t deg = phi.size() - 1;  // = phi(m)
    std::vector<Rat> work = c_;
    for (size_t i = work.size(); i-- > deg;) {
        if (work[i] == 0) continue;
        Rat lead = work[i];  // phi is monic
        work[i] = 0;
        for (size_t j = 0; j < deg; ++j) work[i - deg + j] -= lead * phi[j];
    }
    Cyc r;
    r.m_ = m_;
    r.c_.assign(m_, Rat(0));
    for (size_t j = 0; j < deg && j < work.size(); ++j) r.c_[j] = work[j];
    return r;
}

bool Cyc::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) {
            Cyc can = canonical();
            for (const auto& cc : can.c_)
                if (cc != 0) return false;
            return true;
        }
    return true;
}

std::optional<Rat> Cyc::as_rational() const {
    Cyc can = canonical();
    for (uint32_t k = 1; k < can.m_; ++k)
        if (can.c_[k] != 0) return std::nullopt;
    return can.c_[0];
}

double Cyc::approx_real() const {
    double s = 0;
    for (uint32_t k = 0; k < m_; ++k)
        if (c_[k] != 0)
            s += static_cast<double>(c_[k]) * std::cos(2.0 * M_PI * k / m_);
    return s;
}

double Cyc::approx_imag() const {
    double s = 0;
    for (uint32_t k = 0; k < m_; ++k)
        if (c_[k] != 0)
            s += static_cast<double>(c_[k]) * std::sin(2.0 * M_PI * k / m_);
    return s;
}

std::string Cyc::str() const {
    std::ostringstream os;
    bool first = true;
    for (uint32_t k = 0; k < m_; ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        os << c_[k];
        if (k) os << "*z" << m_ << "^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

RootOfUnity psi_F_root(const Padic& x) {
    uint32_t p = x.prime();
    if (x.is_zero()) {
        if (!x.zero_is_exact() && x.abs_prec() < 1)
            throw precision_error("psi_F undecidable at this precision");
        return RootOfUnity{1, 0};
    }
    int j = std::max(0, -x.val());
    // value = zeta_{p^{j+1}}^{x p^j mod p^{j+1}}
    uint64_t mod = detail::pow_u64(p, static_cast<unsigned>(j + 1));
    uint64_t e = x.shifted_residue(j, j + 1);
    return RootOfUnity::make(static_cast<uint32_t>(mod), static_cast<long long>(e));
}

Cyc psi_F(const Padic& x) { return Cyc::root(psi_F_root(x)); }

}  // namespace shalika
