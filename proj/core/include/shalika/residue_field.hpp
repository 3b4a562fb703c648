#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "shalika/cyclotomic.hpp"

namespace shalika {

// F_{p^d} presented as F_p[X]/(f) for a monic irreducible f of degree
// d in {1, 2, 4}. Elements are indexed by their coefficient vector read in
// base p (c0 + c1*p + ... ). Discrete logarithms are tabulated against the
// lexicographically smallest primitive element.
class ResidueField {
public:
    // modulus: coefficients of f = X^d + f[d-1] X^{d-1} + ... + f[0] given as
    // the lower d coefficients (mod p). Irreducibility is checked.
    ResidueField(uint32_t p, const std::vector<uint32_t>& modulus_low_coeffs);

    static std::shared_ptr<const ResidueField> prime_field(uint32_t p);

    uint32_t p() const { return p_; }
    uint32_t degree() const { return d_; }
    uint32_t q() const { return q_; }
    uint32_t generator() const { return gen_; }

    // element encoding
    uint32_t encode(const std::vector<uint32_t>& coeffs) const;
    std::vector<uint32_t> decode(uint32_t idx) const;
    uint32_t coeff(uint32_t idx, uint32_t i) const;

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

    uint32_t scalar(uint32_t c) const { return c % p_; }  // image of F_p
    uint32_t x_class() const;                             // class of X

    // dlog w.r.t. the canonical generator; a != 0.
    uint32_t dlog(uint32_t a) const;
    uint32_t exp(uint64_t e) const { return exp_[e % (q_ - 1)]; }

    // norm down to F_p: a^{(q-1)/(p-1)} read as a scalar in [0, p).
    uint32_t norm_to_prime(uint32_t a) const;

    static bool is_irreducible(uint32_t p, const std::vector<uint32_t>& low_coeffs);

private:
    uint32_t p_, d_, q_;
    std::vector<uint32_t> f_;     // low coefficients of the modulus
    uint32_t gen_ = 0;
    std::vector<uint32_t> dlog_;  // index -> exponent (0 slot unused)
    std::vector<uint32_t> exp_;   // exponent -> index
};

// Element of a ResidueField (value semantics; the field is shared).
struct FFElem {
    std::shared_ptr<const ResidueField> F;
    uint32_t idx = 0;

    bool is_zero() const { return idx == 0; }
    FFElem operator*(const FFElem& o) const { return {F, F->mul(idx, o.idx)}; }
    FFElem operator+(const FFElem& o) const { return {F, F->add(idx, o.idx)}; }
    bool operator==(const FFElem& o) const { return idx == o.idx; }
};

// Multiplicative character of F_{p^d}^x: x -> zeta_{q-1}^{t dlog x}.
struct MultChar {
    std::shared_ptr<const ResidueField> F;
    uint32_t t = 0;  // exponent modulo q - 1

    bool is_trivial() const { return t % (F->q() - 1) == 0; }
    RootOfUnity value_root(uint32_t x_idx) const;
    Cyc operator()(uint32_t x_idx) const { return Cyc::root(value_root(x_idx)); }
    Cyc operator()(const FFElem& x) const { return (*this)(x.idx); }
    MultChar times(const MultChar& o) const;  // same field
    MultChar power(uint64_t k) const { return MultChar{F, static_cast<uint32_t>((static_cast<uint64_t>(t) * (k % (F->q() - 1))) % (F->q() - 1))}; }
};

// char_eval with the spec's error contract (x != 0).
Cyc char_eval(const MultChar& chi, const FFElem& x);

}  // namespace shalika
