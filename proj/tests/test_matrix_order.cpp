#include "doctest.h"
#include "shalika/family.hpp"

#include <random>

using namespace shalika;

namespace {
// random member of the order: entry (i,j) = pi^{L[i][j]} * (random integer)
Mat4 random_member(const OrderSpec& ord, uint32_t p, std::mt19937_64& rng, bool unit_diag = false) {
    Mat4 m = Mat4::zero(p);
    Padic pi = Padic::from_int(p, p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long long t = static_cast<long long>(rng() % 81);
            if (unit_diag && i == j) t = 1 + static_cast<long long>(rng() % 80) * static_cast<long long>(p);
            m(i, j) = Padic::from_int(p, t) * pi.pow(ord.grid()[i][j]);
        }
    return m;
}
}  // namespace

TEST_CASE("matrix determinant and inverse are exact") {
    std::mt19937_64 rng(17);
    uint32_t p = 3;
    for (int trial = 0; trial < 50; ++trial) {
        Mat4 m = Mat4::zero(p);
        for (int i = 0; i < 16; ++i)
            m(i / 4, i % 4) = Padic::from_int(p, static_cast<long long>(rng() % 200) - 100);
        Padic d = m.det();
        if (d.is_zero()) continue;
        CHECK((m * m.inverse()).equals(Mat4::identity(p)));
        CHECK((m.inverse() * m).equals(Mat4::identity(p)));
    }
}

TEST_CASE("order membership examples") {
    OrderSpec A4 = OrderSpec::middle_order();
    uint32_t p = 2;
    CHECK(A4.contains(Mat4::identity(p)));
    CHECK(A4.u_level(Mat4::identity(p)) == 0);

    // beta_f fails the (1,4)-entry bound of A_4
    FamilySpec fam = FamilySpec::middle(2, 1, 1, 0, RootOfUnity{1, 0});
    StratumData st = beta_matrix(fam);
    CHECK(!st.order.contains(st.beta));
    CHECK(st.beta(0, 3).val() == -2);
    CHECK(st.order.grid()[0][3] == -1);

    // 1 + p * (grid-unit matrix) lands in U^1(A_M) and not deeper
    OrderSpec AM = OrderSpec::maximal_order_conj();
    uint32_t q = 3;
    Mat4 grid_unit = Mat4::zero(q);
    Padic pi = Padic::from_int(q, q);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) grid_unit(i, j) = pi.pow(AM.grid()[i][j]);
    Mat4 m = Mat4::identity(q) + grid_unit * pi;
    CHECK(AM.u_level(m) == 1);
}

TEST_CASE("radical power grids") {
    OrderSpec A4 = OrderSpec::middle_order();
    // P^2 = p A for a period-2 order
    ValGrid p2 = A4.radical_power(2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(p2[i][j] == A4.grid()[i][j] + 1);
    ValGrid pm1 = A4.radical_power(-1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(pm1[i][j] == A4.radical_power(1)[i][j] - 1);
    OrderSpec Im = OrderSpec::minimal_order();
    ValGrid p4 = Im.radical_power(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(p4[i][j] == Im.grid()[i][j] + 1);
}

TEST_CASE("order closure under multiplication (property)") {
    std::mt19937_64 rng(23);
    for (auto mk : {&OrderSpec::minimal_order, &OrderSpec::middle_order,
                    &OrderSpec::maximal_order_conj}) {
        OrderSpec ord = mk();
        for (int trial = 0; trial < 1000; ++trial) {
            uint32_t p = (trial % 2) ? 2 : 3;
            Mat4 a = random_member(ord, p, rng);
            Mat4 b = random_member(ord, p, rng);
            CHECK(ord.contains(a * b));
        }
    }
}

TEST_CASE("unit-group filtration (property)") {
    std::mt19937_64 rng(29);
    OrderSpec A4 = OrderSpec::middle_order();
    uint32_t p = 2;
    Padic pi = Padic::from_int(p, p);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        ValGrid rn = A4.radical_power(n);
        auto rad_elt = [&]() {
            Mat4 m = Mat4::zero(p);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    m(i, j) = Padic::from_int(p, static_cast<long long>(rng() % 16)) * pi.pow(rn[i][j]);
            return m;
        };
        Mat4 one = Mat4::identity(p);
        Mat4 u = one + rad_elt(), v = one + rad_elt();
        CHECK(A4.in_unit_group_level(u, n));
        if (n > 1) CHECK(A4.in_unit_group_level(u, n - 1));  // U^{n} inside U^{n-1}
        CHECK(A4.in_unit_group_level(u * v, n));
    }
}
