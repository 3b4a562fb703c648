#pragma once

#include "shalika/cyclotomic.hpp"
#include "shalika/residue_field.hpp"

namespace shalika {

// Teichmueller representative: the unique (p-1)-st root of unity in Z_p
// congruent to r mod p, at the requested precision.
Padic teichmuller(uint32_t p, uint32_t r, int prec = -1);

// Teichmueller residue of a nonzero x: the class of x * p^{-v(x)} mod p.
uint32_t teich_residue(const Padic& x);

// Tamely ramified quasi-character of F^x = p^Z x mu'_F x (1 + P):
// determined by a character of k_F^x and a root-of-unity value at the
// uniformizer; trivial on 1 + P by construction.
struct TameChar {
    MultChar mu;          // on k_F^x (degree-1 residue field)
    RootOfUnity at_pi;    // value at the uniformizer

    static TameChar trivial(uint32_t p);
    bool is_trivial() const { return mu.is_trivial() && at_pi.m == 1; }

    RootOfUnity value_root(const Padic& x) const;
    Cyc operator()(const Padic& x) const { return Cyc::root(value_root(x)); }
    // eta^k as a tame character
    TameChar power(uint64_t k) const;
    TameChar times(const TameChar& o) const;
};

Cyc tame_eval(const TameChar& eta, const Padic& x);

}  // namespace shalika
