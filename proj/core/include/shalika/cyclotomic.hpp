#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shalika/padic.hpp"

namespace shalika {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// A root of unity zeta_m^e in lowest terms (m = order of the value).
struct RootOfUnity {
    uint32_t m = 1;
    uint32_t e = 0;

    static RootOfUnity make(uint32_t m, long long e);
    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity pow(long long k) const;
    RootOfUnity inverse() const { return pow(-1); }
    bool operator==(const RootOfUnity& o) const { return m == o.m && e == o.e; }
};

// Exact element of Q(zeta_m), stored as sum_k c[k] zeta_m^k with rational
// coefficients. The zero test reduces modulo the m-th cyclotomic polynomial.
class Cyc {
public:
    static uint32_t max_conductor();
    static void set_max_conductor(uint32_t m);

    Cyc() : m_(1), c_(1, Rat(0)) {}
    explicit Cyc(const Rat& r) : m_(1), c_(1, r) {}
    explicit Cyc(long long n) : m_(1), c_(1, Rat(n)) {}

    static Cyc zero() { return Cyc(); }
    static Cyc one() { return Cyc(1); }
    static Cyc root(uint32_t m, long long e);  // zeta_m^e
    static Cyc root(const RootOfUnity& z) { return root(z.m, z.e); }
    static Cyc monomial(const Rat& coeff, uint32_t m, long long e);

    uint32_t conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Cyc embedded(uint32_t M) const;  // into Q(zeta_M), m | M

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator-() const;
    Cyc operator*(const Cyc& o) const;
    Cyc operator*(const Rat& r) const;
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    // Fast accumulate of a single monomial coeff * zeta_m^e (m must divide
    // the current conductor or the conductors are merged).
    void add_monomial(const Rat& coeff, uint32_t m, long long e);

    Cyc pow(long long k) const;

    bool is_zero() const;
    bool operator==(const Cyc& o) const { return (*this - o).is_zero(); }
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    // Canonical representative: coefficients reduced modulo Phi_m, degree
    // < phi(m), with the conductor kept as-is.
    Cyc canonical() const;
    // Rational value when the canonical form is constant.
    std::optional<Rat> as_rational() const;
    // True when the value is a nonnegative rational times a root of unity
    // equal to the given one... (not provided; tests use as_rational of
    // ratios instead).

    double approx_real() const;   // advisory only
    double approx_imag() const;   // advisory only

    std::string str() const;

    // Integer coefficients of Phi_m (cached).
    static const std::vector<long long>& cyclotomic_poly(uint32_t m);

private:
    void check_conductor(uint32_t m) const;

    uint32_t m_;
    std::vector<Rat> c_;  // size m_
};

// The additive character of F = Q_p with conductor P_F:
// psi(x) = exp(2 pi i frac(x / p)), realized exactly as a root of unity of
// order p^{max(0, 1 - v(x))}.
RootOfUnity psi_F_root(const Padic& x);
Cyc psi_F(const Padic& x);

}  // namespace shalika
