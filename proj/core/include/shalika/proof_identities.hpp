#pragma once

#include <random>

#include "shalika/family.hpp"

namespace shalika {

enum class ProofCase { T0, T1, T2 };

// One instantiation of the variables appearing in a coset-decomposition
// computation: Iwahori/Bruhat cell entries, the x slot, and the unit
// coordinates, subject to the congruence constraints of the case.
struct ProofParams {
    Padic x0, x1, x2;             // unit coordinates (family-dependent subset)
    Padic h11, h12, h21, h22, x;  // cell representative data
    Padic vteich;                 // Teichmueller part of h22 (biquadratic T1)
};

// Draw parameters satisfying the case constraints.
ProofParams draw_proof_params(const FamilyContext& ctx, ProofCase pc, std::mt19937_64& rng);

// Build u and z from the closed-form entry lists of the decomposition
// alpha = u pi^k (unit) z, multiply out, and check exact equality with
// shalika_embed together with the stated psi_4(u) and psi_beta(z) values
// and z in U^1. Throws domain_error when params violate the constraints.
bool verify_proof_decomposition(const FamilyContext& ctx, ProofCase pc, const ProofParams& pr);

}  // namespace shalika
