#pragma once

#include <map>
#include <set>

#include "shalika/whittaker.hpp"

namespace shalika {

struct Window {
    int lo = 0, hi = 0;
    bool contains(int x) const { return lo <= x && x <= hi; }
};

struct IntegralConfig {
    int level = 0;       // 0: family default (p = 2 -> 3, else 2)
    Window r_window{0, 0};  // {0,0} with lo==hi==0 treated as unset
    bool r_window_set = false;
    int x_lo = -2;       // x runs over representatives of P^{x_lo} / P^{level}
    int jobs = 0;        // 0: SHALIKA_JOBS or hardware concurrency
    int escalation_budget = 2;

    int effective_level(const FamilySpec& spec) const;
    Window effective_r_window(const FamilySpec& spec) const;
};

// Character-independent geometry of the coset sum at one level: for every
// point with nonvanishing Whittaker value, the torus exponent r, the residue
// index of the J-part, the additive-character product, and the det(h)
// residue, with multiplicity. Reusable across (chi, zeta, twist) and the
// sign-twisted period.
struct GeometryTable {
    int level = 0;
    Window r_window;
    int x_lo = -2;
    uint64_t h_group_size = 0;
    // packed key -> multiplicity; sorted by key
    std::vector<std::pair<uint64_t, long long>> cells;

    static uint64_t pack(int r, uint32_t xi, uint32_t psi_cexp, uint32_t psi_e, uint32_t dh);
    static void unpack(uint64_t key, int& r, uint32_t& xi, uint32_t& psi_cexp, uint32_t& psi_e,
                       uint32_t& dh);
};

GeometryTable lambda0_geometry(const FamilyContext& ctx, int level, Window r_window, int x_lo,
                               int jobs);

// Shared cache of geometry tables keyed by family shape and window data.
class GeometryCache {
public:
    const GeometryTable& get(const FamilyContext& ctx, int level, Window r_window, int x_lo,
                             int jobs);

private:
    std::map<std::string, GeometryTable> tables_;
};

struct IntegralReport {
    FamilySpec family;
    int level = 0;
    Window r_window;
    int x_lo = -2;
    int sign_s0 = +1;
    std::map<int, Cyc> t_parts;  // k -> T_k
    Cyc total;
    bool stable = false;
    bool nonzero = false;
};

// T_k assembly for the context's own character data. sign = -1 multiplies
// each point by (-1)^r (the q^{s0} = -1 period).
std::map<int, Cyc> assemble_t_parts(const FamilyContext& ctx, const GeometryTable& gt, int sign,
                                    const Rat& weight_scale = Rat(1));

// The twisted Shalika period at s0 = 0 as a finite exact sum, with the
// level-(M+1) stability comparison. Escalates the level on instability up
// to the configured budget.
IntegralReport lambda0(const FamilyContext& ctx, const IntegralConfig& cfg,
                       GeometryCache* cache = nullptr);

// Same sum with each point weighted by sign^r (q^{s0} = sign).
IntegralReport lambda_s0_sign(const FamilyContext& ctx, int sign, const IntegralConfig& cfg,
                              GeometryCache* cache = nullptr);

// k values in the window carrying a nonvanishing Whittaker value among the
// enumerated Shalika points.
std::set<int> support_scan(const FamilyContext& ctx, Window k_window, int level, int jobs = 0);

// T_k at level M equals T_k at level M+1, exactly, for every k.
bool stability_check(const FamilyContext& ctx, const IntegralConfig& cfg,
                     GeometryCache* cache = nullptr);

int default_jobs();

}  // namespace shalika
