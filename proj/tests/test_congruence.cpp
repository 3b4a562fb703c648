#include "doctest.h"
#include "shalika/congruence.hpp"

#include <random>
#include <set>

using namespace shalika;

namespace {
// brute-force solution set over (Z/p^W)^n
std::set<std::vector<uint64_t>> brute_force(const CongruenceSystem& sys, int W) {
    uint64_t pw = detail::pow_u64(sys.p, static_cast<unsigned>(W));
    uint64_t total = 1;
    for (int i = 0; i < sys.unknowns; ++i) total *= pw;
    std::set<std::vector<uint64_t>> out;
    for (uint64_t code = 0; code < total; ++code) {
        std::vector<uint64_t> x(sys.unknowns);
        uint64_t c = code;
        for (int i = 0; i < sys.unknowns; ++i) {
            x[i] = c % pw;
            c /= pw;
        }
        bool ok = true;
        for (const auto& row : sys.rows) {
            Padic acc = row.constant;
            for (int i = 0; i < sys.unknowns && ok; ++i)
                acc = acc + row.coeffs[i] * Padic::from_int(sys.p, static_cast<long long>(x[i]));
            if (!val_ge(acc, row.level)) ok = false;
        }
        if (ok) out.insert(x);
    }
    return out;
}
}  // namespace

TEST_CASE("empty system is the full space") {
    CongruenceSystem sys;
    sys.p = 2;
    sys.unknowns = 2;
    auto sol = solve_congruences(sys);
    REQUIRE(sol);
    auto pts = sol->enumerate(1);
    CHECK(pts.size() == 4);  // all of (Z/2)^2
}

TEST_CASE("single constraint 2x = 0 mod 4") {
    CongruenceSystem sys;
    sys.p = 2;
    sys.unknowns = 1;
    sys.rows.push_back({{Padic::from_int(2, 2)}, Padic::zero(2), 2});
    auto sol = solve_congruences(sys);
    REQUIRE(sol);
    auto pts = sol->enumerate(2);
    CHECK(pts.size() == 2);  // x in {0, 2} mod 4
    for (auto& x : pts) CHECK(x[0] % 2 == 0);
}

TEST_CASE("infeasible constant") {
    CongruenceSystem sys;
    sys.p = 2;
    sys.unknowns = 1;
    sys.rows.push_back({{Padic::from_int(2, 2)}, Padic::from_int(2, 1), 2});  // 2x + 1 = 0 mod 4
    CHECK(!solve_congruences(sys));
}

TEST_CASE("solver agrees with brute force (oracle, 200 random systems)") {
    std::mt19937_64 rng(41);
    const int W = 2;
    for (int trial = 0; trial < 200; ++trial) {
        CongruenceSystem sys;
        sys.p = 2;
        sys.unknowns = 3;
        int nrows = 1 + static_cast<int>(rng() % 4);
        for (int r = 0; r < nrows; ++r) {
            Congruence cg;
            for (int i = 0; i < 3; ++i)
                cg.coeffs.push_back(Padic::from_int(2, static_cast<long long>(rng() % 4), 8));
            cg.constant = Padic::from_int(2, static_cast<long long>(rng() % 4), 8);
            cg.level = 1 + static_cast<int>(rng() % 2);
            sys.rows.push_back(cg);
        }
        auto expect = brute_force(sys, W);
        auto sol = solve_congruences(sys);
        if (!sol) {
            CHECK(expect.empty());
            continue;
        }
        REQUIRE(!expect.empty());
        auto got_list = sol->enumerate(W);
        std::set<std::vector<uint64_t>> got(got_list.begin(), got_list.end());
        CHECK(got == expect);
    }
}

TEST_CASE("fractional coefficients scale correctly") {
    // x/2 + 1/2 = 0 mod 2  <=>  x + 1 = 0 mod 4
    CongruenceSystem sys;
    sys.p = 2;
    sys.unknowns = 1;
    sys.rows.push_back({{Padic::from_rational(2, 1, 2)}, Padic::from_rational(2, 1, 2), 1});
    auto sol = solve_congruences(sys);
    REQUIRE(sol);
    for (auto& x : sol->enumerate(2)) CHECK(x[0] == 3);
}
