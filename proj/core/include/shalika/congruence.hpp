#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "shalika/padic.hpp"

namespace shalika {

// One affine constraint  sum_i coeffs[i] * x_i + constant ≡ 0  (mod P^level)
// on unknowns x_i ranging over O.
struct Congruence {
    std::vector<Padic> coeffs;
    Padic constant;
    int level = 0;
};

struct CongruenceSystem {
    uint32_t p = 2;
    int unknowns = 0;
    std::vector<Congruence> rows;
};

// Solutions of a feasible system, described modulo p^modulus_exp: the set is
// particular + (integer span of generators). free_exp[i] counts the free
// digits of coordinate i (p^{modulus_exp - free_exp[i]} pins the rest).
struct SolutionSet {
    uint32_t p = 2;
    int unknowns = 0;
    int modulus_exp = 0;
    std::vector<uint64_t> particular;
    std::vector<std::vector<uint64_t>> generators;
    std::vector<int> free_exp;

    bool satisfies(const CongruenceSystem& sys, const std::vector<uint64_t>& x) const;
    // all solutions mod p^mod_exp (mod_exp <= modulus_exp); for tests
    std::vector<std::vector<uint64_t>> enumerate(int mod_exp) const;
};

// Hermite-style elimination over Z/p^W (pivot on the entry of minimal
// valuation). Exact: no precision is lost inside the ring Z/p^W; systems
// whose scaled window exceeds the mantissa capacity raise precision_error.
class ZpnEliminator {
public:
    void reset(uint32_t p, int W, int ncols);
    void add_row(const uint64_t* coeffs, uint64_t rhs);
    int ncols() const { return ncols_; }
    int W() const { return W_; }
    uint64_t pW() const { return pW_; }

    bool eliminate();  // false = infeasible

    // particular solution with all free digits zero
    void particular(uint64_t* out) const;
    // kernel generators: free columns (unit steps) and pivoted columns
    // (p^{W-v} steps); fn receives a ncols-vector mod p^W
    void for_each_kernel_generator(const std::function<void(const uint64_t*)>& fn) const;
    int pivot_valuation(int col) const;  // W when column has no pivot... per-column pin

private:
    void backsolve(int preset_col, uint64_t preset_val, uint64_t* out) const;

    uint32_t p_ = 2;
    int W_ = 0;
    uint64_t pW_ = 0;
    int ncols_ = 0;
    int nrows_ = 0;
    std::vector<uint64_t> m_;          // nrows x (ncols+1)
    std::vector<int> pivot_row_of_;    // per column, -1 = free
    std::vector<int> pivot_val_of_;    // per column
    std::vector<int> pivot_order_;     // columns in creation order
    std::vector<char> row_active_;
    int valp(uint64_t x) const;
};

// Normative solver for the public constraint form. Returns nullopt when the
// system is infeasible at the working precision.
std::optional<SolutionSet> solve_congruences(const CongruenceSystem& sys);

}  // namespace shalika
