#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shalika {

// Raised when a result would carry fewer significant digits than the
// configured floor, or when a decision needs digits that were lost.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised on domain violations (division by zero, non-unit inverse, ...).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
uint64_t pow_u64(uint64_t base, unsigned e);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t inv_mod_pk(uint64_t a, uint64_t pk);  // a coprime to p
}  // namespace detail

// Truncated element of Q_p.
//
// A nonzero value is u * p^v with u a unit mantissa known modulo p^prec
// ("prec" significant base-p digits); its absolute precision is v + prec.
// A zero value carries only an absolute precision: the number is known to be
// divisible by p^abs (abs = +infinity for exact zeros). Additions track
// cancellation by shrinking the result's precision; results whose relative
// precision would fall below min_precision_floor() are rejected.
class Padic {
public:
    static constexpr int32_t kExactZero = INT32_MAX;

    // Largest digit count such that p^n fits comfortably in 64 bits
    // (products are carried in 128 bits).
    static int max_digits(uint32_t p);

    static int min_precision_floor();
    static void set_min_precision_floor(int floor);

    Padic() : p_(2), v_(0), u_(0), prec_(0), zero_(true), zero_abs_(kExactZero) {}

    static Padic zero(uint32_t p) { return Padic(p); }
    static Padic zero_at(uint32_t p, int32_t abs_prec);
    static Padic from_int(uint32_t p, long long n, int prec = -1);
    static Padic from_rational(uint32_t p, long long num, long long den, int prec = -1);
    // u need not be reduced or coprime to p; the pair (u, v) means u * p^v
    // with u known modulo p^prec.
    static Padic from_unit(uint32_t p, uint64_t u, int32_t v, int prec);

    uint32_t prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool zero_is_exact() const { return zero_ && zero_abs_ == kExactZero; }
    bool is_unit() const { return !zero_ && v_ == 0; }

    // Valuation of a nonzero value; throws on zeros.
    int32_t val() const;
    // Valuation if decidable: nonzero -> v, exact zero -> kExactZero,
    // cancellation zero -> throws.
    int32_t val_or_infinity() const;

    int prec() const { return zero_ ? 0 : prec_; }
    int32_t abs_prec() const { return zero_ ? zero_abs_ : v_ + prec_; }
    uint64_t mantissa() const;  // unit part modulo p^prec; throws on zeros

    // Integer residue (x * p^shift) mod p^k, in [0, p^k). Requires the value
    // to be integral after shifting and known to absolute precision >= k.
    uint64_t shifted_residue(int shift, int k) const;

    Padic operator-() const;
    Padic operator+(const Padic& o) const;
    Padic operator-(const Padic& o) const { return *this + (-o); }
    Padic operator*(const Padic& o) const;
    Padic operator/(const Padic& o) const;
    Padic inv() const;
    Padic pow(int e) const;

    // Truncate to at most n significant digits.
    Padic truncated(int n) const;

    // Agreement at the smaller of the two absolute precisions. Throws
    // precision_error when that overlap is below the floor.
    bool equals(const Padic& o) const;
    bool operator==(const Padic& o) const { return equals(o); }

    std::string str() const;

    friend bool val_ge(const Padic& x, int bound);

private:
    explicit Padic(uint32_t p)
        : p_(p), v_(0), u_(0), prec_(0), zero_(true), zero_abs_(kExactZero) {}

    void require_same_prime(const Padic& o) const;

    uint32_t p_;
    int32_t v_;
    uint64_t u_;
    int16_t prec_;
    bool zero_;
    int32_t zero_abs_;
};

// v(x) >= bound, exact zeros counting as +infinity; throws precision_error
// when a cancellation zero cannot decide.
bool val_ge(const Padic& x, int bound);

}  // namespace shalika
