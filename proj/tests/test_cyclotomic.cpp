#include "doctest.h"
#include "shalika/cyclotomic.hpp"

#include <cmath>
#include <random>

using namespace shalika;

TEST_CASE("root of unity normal form") {
    RootOfUnity z = RootOfUnity::make(12, 8);  // zeta_12^8 = zeta_3^2
    CHECK(z.m == 3);
    CHECK(z.e == 2);
    CHECK((z * z).e == 1);  // zeta_3^4 = zeta_3
    CHECK(z.pow(3).m == 1);
}

TEST_CASE("cyclotomic ring basics") {
    CHECK((Cyc::one() + Cyc::root(2, 1)).is_zero());  // 1 + zeta_2 = 0
    for (uint32_t p : {2u, 3u, 5u}) {
        Cyc s = Cyc::zero();
        for (uint32_t k = 0; k < p; ++k) s += Cyc::root(p, k);
        CHECK(s.is_zero());  // vanishing character sum
    }
    // zeta_6^2 = zeta_3 across conductors
    CHECK(Cyc::root(6, 1) * Cyc::root(6, 1) == Cyc::root(3, 1));
}

TEST_CASE("as_rational") {
    CHECK(*Cyc(Rat(7, 3)).as_rational() == Rat(7, 3));
    CHECK(!Cyc::root(5, 1).as_rational());
    // zeta_3 + zeta_3^2 = -1
    Cyc s = Cyc::root(3, 1) + Cyc::root(3, 2);
    auto r = s.as_rational();
    REQUIRE(r);
    CHECK(*r == Rat(-1));
}

TEST_CASE("zero test against floating approximation") {
    std::mt19937_64 rng(11);
    uint32_t m = 24;
    int zero_seen = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        // random small combination; half the trials add a forced zero
        Cyc v = Cyc::zero();
        for (int t = 0; t < 4; ++t)
            v += Cyc::monomial(Rat(static_cast<long long>(rng() % 7) - 3), m, rng() % m);
        if (trial % 2 == 0) {
            // add sum over a coset of zeta_3 inside zeta_24: vanishes
            long long c = static_cast<long long>(rng() % 5) - 2;
            for (uint32_t k = 0; k < 3; ++k) v += Cyc::monomial(Rat(c), 3, k);
        }
        double mag = std::hypot(v.approx_real(), v.approx_imag());
        if (v.is_zero()) {
            ++zero_seen;
            CHECK(mag < 1e-9);
        } else {
            // rescale by the largest coefficient before comparing
            Rat big(0);
            for (const auto& cc : v.coeffs())
                if (abs(cc) > big) big = abs(cc);
            CHECK(mag / static_cast<double>(big) > 1e-6);
        }
    }
    CHECK(zero_seen > 0);
}

TEST_CASE("psi_F additive character") {
    CHECK(psi_F(Padic::zero(3)) == Cyc::one());
    for (uint32_t p : {2u, 3u, 5u}) {
        CHECK(psi_F(Padic::from_int(p, p)) == Cyc::one());  // conductor P
        CHECK(psi_F(Padic::from_int(p, 1)) != Cyc::one());  // nontrivial on O
    }
    CHECK(psi_F(Padic::from_int(3, 1)) == Cyc::root(3, 1));
    // deeper: psi(1/3) = zeta_9
    CHECK(psi_F(Padic::from_rational(3, 1, 3)) == Cyc::root(9, 1));
}

TEST_CASE("psi_F additivity (property)") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        uint32_t p = (i % 2) ? 3 : 2;
        long long na = static_cast<long long>(rng() % 2000) - 1000;
        long long nb = static_cast<long long>(rng() % 2000) - 1000;
        long long da = 1 + static_cast<long long>(rng() % 3);
        Padic a = Padic::from_rational(p, na, da * da, 12);
        Padic b = Padic::from_int(p, nb, 12);
        CHECK(psi_F(a + b) == psi_F(a) * psi_F(b));
    }
}

TEST_CASE("conductor bound is enforced") {
    uint32_t save = Cyc::max_conductor();
    Cyc::set_max_conductor(100);
    CHECK_THROWS_AS(Cyc::root(101, 1), domain_error);
    CHECK_THROWS_AS(Cyc::root(99, 1) * Cyc::root(98, 1), domain_error);
    Cyc::set_max_conductor(save);
}
