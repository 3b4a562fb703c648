#pragma once

#include <map>
#include <vector>

#include "shalika/congruence.hpp"
#include "shalika/family.hpp"

namespace shalika {

// Structured value of the Paskunas-Stevens Whittaker function at one point:
// W(g) = psi * zeta-charge * chi-charge, the charges determined by (k, xi).
struct WhittakerParts {
    bool nonzero = false;
    int k = 0;
    uint32_t xi = 1;
    RootOfUnity psi{1, 0};  // psi_4(u) * psi_beta(z)

    RootOfUnity value_root(const FamilyContext& C) const;
};

// Linear x-slot for the prefilter: the Shalika element at torus exponent r
// with x = pi^{x_lo} t, t in O free; c21 and c23 are the coefficients of t
// in the (3,2) and (3,4) entries.
struct FreeXColumn {
    Padic c21, c23;
};

// Decides g in N(4,F) pi^k J by solving the entry-valuation congruence
// system for the unitriangular left factor, then matching the residue of
// the J-part against the finite image of O_E^x. One instance per thread;
// scratch buffers are reused across calls.
class WhittakerEvaluator {
public:
    explicit WhittakerEvaluator(const FamilyContext& ctx) : C_(ctx) {}

    const FamilyContext& context() const { return C_; }

    WhittakerParts eval(const Mat4& g);                    // computes det
    WhittakerParts eval_at(const Mat4& g, int det_val);    // det valuation known

    // Any point of the (r, h) fiber possibly on support, with x running over
    // the whole window? Sound and complete rejection of the fiber.
    bool fiber_feasible(const Mat4& g_x0, int det_val, const FreeXColumn& xc);

    Cyc value(const Mat4& g);  // exact value; Cyc::zero() off the support

    // test hook: every residue match (their values must coincide)
    std::vector<WhittakerParts> eval_all_matches(const Mat4& g);

private:
    struct KData {
        Mat4 B;       // pi^{-k}
        ValGrid vB;   // entry valuations of B
        ValGrid vPi;  // entry valuations of pi^k
    };
    const KData& kdata(int k);
    WhittakerParts run(const Mat4& g, int det_val, std::vector<WhittakerParts>* all,
                       const FreeXColumn* xc);

    const FamilyContext& C_;
    std::map<int, KData> kcache_;
    ZpnEliminator el_;
    std::vector<uint64_t> tsol_;
    std::vector<std::array<int8_t, 16>> gen_img_;
    std::vector<std::vector<uint64_t>> gen_t_;
};

Cyc whittaker_value(const FamilyContext& ctx, const Mat4& g);
// Bessel function of the type: equals Lambda on bold-J; throws domain_error
// when j is not in bold-J.
Cyc bessel_value(const FamilyContext& ctx, const Mat4& j);

}  // namespace shalika
