#pragma once

#include "shalika/integral.hpp"

namespace shalika {

// Tame central character: a character of mu'_F together with a value at the
// uniformizer (tameness is structural here: tr(beta) = 0 for every family).
struct CentralCharacter {
    MultChar mu;  // on k_F^x
    Cyc at_pi;

    bool is_trivial() const { return mu.is_trivial() && at_pi == Cyc::one(); }
};

CentralCharacter central_character(const FamilySpec& fam);

// Theorem-side criterion: middle/biquadratic need only a trivial central
// character; the simple family additionally needs zeta = +-eta(-v pi).
bool theorem_criterion(const FamilySpec& fam);

struct Verdict {
    FamilySpec family;
    bool central_trivial = false;
    bool lambda0_computed = false;
    bool lambda0_nonzero = false;
    bool simple_zeta_criterion = true;  // zeta = +-eta(-v pi) (simple only)
    bool transfer = false;              // Shalika model / pole at s = 0 / SO(5) transfer
    bool criterion_match = false;
    IntegralReport report;
};

// Numeric verdict with the closed-form cross-check. A criterion mismatch is
// carried in the result (criterion_match = false), never reconciled.
Verdict verdict(const FamilySpec& fam, const IntegralConfig& cfg, GeometryCache* cache = nullptr);

// Exterior-square L-factor restricted to q^{s0} in {+1, -1}: the list of
// signs whose period is nonzero, empty when the central character is
// nontrivial.
struct LFactor {
    std::vector<int> signs;
    std::string factor_string(uint32_t p) const;
};

LFactor l_factor(const FamilySpec& fam, const IntegralConfig& cfg, GeometryCache* cache = nullptr);

// The untwisted family whose Lambda_0 behavior matches fam twisted by eta.
FamilySpec twist_reparametrize(const FamilySpec& fam);

}  // namespace shalika
