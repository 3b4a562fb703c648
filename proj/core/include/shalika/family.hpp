#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "shalika/characters.hpp"
#include "shalika/gl2.hpp"
#include "shalika/order.hpp"

namespace shalika {

enum class FamilyKind { Simple, Middle, Biquadratic };

// Parameter triple for one of the three supercuspidal families of GL(4, F),
// plus an optional tame twist. Characters are carried by exponent against
// the canonical generator of the relevant residue field.
struct FamilySpec {
    uint32_t p = 2;
    FamilyKind kind = FamilyKind::Middle;
    uint32_t v = 1;         // simple: unit class in mu'_F
    long long c = 1, d = 1;  // middle: f = X^2 - dX - c
    long long a = 1, b = 1;  // biquadratic: f_M = X^4 - bX^2 - a
    uint32_t char_exp = 0;   // phi / chi / chi_M exponent
    RootOfUnity zeta{1, 0};
    std::optional<TameChar> twist;

    static FamilySpec simple(uint32_t p, uint32_t v, uint32_t phi_exp, RootOfUnity zeta);
    static FamilySpec middle(uint32_t p, long long c, long long d, uint32_t chi_exp, RootOfUnity zeta);
    static FamilySpec biquadratic(uint32_t p, long long a, long long b, uint32_t chi_exp, RootOfUnity zeta);
    FamilySpec twisted(const TameChar& eta) const;

    void validate() const;  // throws domain_error on bad parameters
    const char* kind_name() const;
};

// The defining stratum: beta, its order, and the numerical invariants that
// drive support bookkeeping.
struct StratumData {
    Mat4 beta;
    OrderSpec order;
    int ram_index;    // e(E/F): 4 / 2 / 1
    int res_degree;   // f(E/F): 1 / 2 / 4
    int det_val;      // v(det beta): -1 / -2 / -4
};

// A decomposition g = u * pi^k * (unit lift of residue coords) * z with
// u upper-unitriangular and z in U^1. The unit lift is the Teichmueller
// representative of the coordinates, so Lambda evaluation never needs the
// depth part of the character.
struct TypeDecomposition {
    int k = 0;
    uint32_t xi = 1;                  // residue-field index of the unit part
    std::vector<uint32_t> coords;     // coordinates in the family's O_F-basis
    Mat4 z;
    Mat4 u;
};

// All machinery for one family: stratum, residue field, unit embedding,
// Teichmueller tables, the simple character psi_beta and the extended type.
class FamilyContext {
public:
    FamilyContext(const FamilySpec& spec, int prec = -1);

    const FamilySpec& spec() const { return spec_; }
    const StratumData& stratum() const { return stratum_; }
    const OrderSpec& order() const { return stratum_.order; }
    uint32_t p() const { return spec_.p; }
    int prec() const { return prec_; }
    const std::shared_ptr<const ResidueField>& kE() const { return kE_; }
    const MultChar& character() const { return chi_; }
    uint32_t sigma_residue() const { return sigma_res_; }  // class of sigma in k_E

    int unit_rank() const { return unit_rank_; }  // O_F-basis length: 1 / 2 / 4
    Mat4 embed_unit(const std::vector<Padic>& coords) const;
    // basis coords of the residue xi (middle: {c, sigma}; biq: {1,..,sigma^3})
    std::vector<uint32_t> residue_coords(uint32_t xi) const;

    const Mat4& teich_embed(uint32_t xi) const { return teich_[xi]; }
    const Mat4& teich_embed_inv(uint32_t xi) const { return teich_inv_[xi]; }
    // trace pairing matrix beta * T(xi)^{-1}, for psi_beta(z) on z = T^{-1} m
    const Mat4& beta_teich_inv(uint32_t xi) const { return beta_teich_inv_[xi]; }

    // support-walk element: beta (simple, middle) or pi_F (biquadratic)
    const Mat4& pi_pow(int k) const;
    const Mat4& pi_pow_inv(int k) const;
    int pi_det_val() const { return pi_det_val_; }

    // candidate k from v(det g); nullopt when no coset can match
    std::optional<int> support_k(int det_val) const;
    // k for a Shalika point at torus exponent r (det valuation 2r)
    std::optional<int> k_from_r(int r) const { return support_k(2 * r); }

    // psi_beta(z) = psi_F(tr(beta (z - 1))); pre: z in U^1
    RootOfUnity psi_beta_root(const Mat4& z) const;
    Cyc psi_beta(const Mat4& z) const;

    // Lambda(pi^k T(xi) z) as a root of unity; the zeta and chi charges are
    // also available separately for grid assembly.
    struct LambdaCharge {
        long long zeta_pow;
        uint32_t chi_arg;  // residue index chi is evaluated at
    };
    LambdaCharge lambda_charge(int k, uint32_t xi) const;
    RootOfUnity lambda_root(int k, uint32_t xi, const Mat4& z) const;

    // m in J = O_E^x U^1: witness (residue, coords, z) or nullopt
    std::optional<TypeDecomposition> j_membership(const Mat4& m) const;
    // g in bold-J = <pi_E> J: full type decomposition (with u = I)
    std::optional<TypeDecomposition> bold_j_decompose(const Mat4& g) const;
    // Lambda at a decomposition
    Cyc lambda_eval(const TypeDecomposition& dec) const;

    // reduced residue tuple of m against the order grid, packed base p;
    // entries of the 16-vector out[] are the per-slot digits
    uint64_t reduced_key(const Mat4& m, uint8_t* out16) const;
    std::optional<uint32_t> residue_lookup(uint64_t key) const;
    const std::vector<std::array<uint8_t, 16>>& residue_tuples() const { return teich_red_; }

private:
    void build_stratum();
    void build_unit_tables();

    FamilySpec spec_;
    int prec_;
    StratumData stratum_{Mat4(), OrderSpec::middle_order(), 2, 2, -2};
    std::shared_ptr<const ResidueField> kE_;
    MultChar chi_;
    uint32_t sigma_res_ = 0;
    int unit_rank_ = 2;
    Mat4 sigma_;  // matrix of the basis generator (unused for simple)
    int pi_det_val_ = -2;
    std::vector<Mat4> teich_, teich_inv_, beta_teich_inv_;
    std::vector<std::array<uint8_t, 16>> teich_red_;
    std::unordered_map<uint64_t, uint32_t> residue_index_;
    mutable std::map<int, Mat4> pi_pow_, pi_pow_inv_;
    mutable std::mutex pi_mu_;
    Mat4 pi_;
};

// Spec-level construction of the stratum alone.
StratumData beta_matrix(const FamilySpec& fam, int prec = -1);

// psi_beta as a standalone operation (validates z in U^1).
Cyc psi_beta(const FamilyContext& ctx, const Mat4& z);

}  // namespace shalika
