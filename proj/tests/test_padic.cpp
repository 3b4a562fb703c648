#include "doctest.h"
#include "shalika/characters.hpp"
#include "shalika/padic.hpp"

#include <random>

using namespace shalika;

TEST_CASE("padic basic arithmetic") {
    Padic one2 = Padic::from_int(2, 1, 8);
    Padic two = one2 + one2;
    CHECK(two.val() == 1);
    CHECK(two.mantissa() == 1);

    Padic p5 = Padic::from_int(5, 5);
    CHECK((p5 / p5).equals(Padic::from_int(5, 1)));

    // (1/3) * 3 = 1 in Q_3, valuation -1 + 1 = 0
    Padic third = Padic::from_rational(3, 1, 3);
    CHECK(third.val() == -1);
    Padic prod = third * Padic::from_int(3, 3);
    CHECK(prod.val() == 0);
    CHECK(prod.equals(Padic::from_int(3, 1)));
}

TEST_CASE("padic valuation rules") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        long long a = static_cast<long long>(rng() % 5000) + 1;
        long long b = static_cast<long long>(rng() % 5000) + 1;
        Padic x = Padic::from_int(3, a), y = Padic::from_int(3, b);
        CHECK((x * y).val() == x.val() + y.val());
        Padic s = x + y;
        if (!s.is_zero()) CHECK(s.val() >= std::min(x.val(), y.val()));
    }
}

TEST_CASE("padic zero handling and errors") {
    Padic z = Padic::zero(7);
    CHECK(z.is_zero());
    CHECK(z.zero_is_exact());
    CHECK_THROWS_AS(z.val(), precision_error);
    CHECK_THROWS_AS(Padic::from_int(7, 3) / z, domain_error);

    // full cancellation leaves a zero known only to finite depth
    Padic a = Padic::from_int(2, 5, 8);
    Padic diff = a - a;
    CHECK(diff.is_zero());
    CHECK(!diff.zero_is_exact());
    CHECK(diff.abs_prec() == 8);
    CHECK_THROWS_AS(Padic::from_int(2, 1) / diff, precision_error);

    // near-total cancellation trips the precision floor
    Padic b = Padic::from_int(2, 1, 6);
    Padic c = Padic::from_int(2, 1 + 32, 6);  // differ only in the top digit
    CHECK_THROWS_AS(b - c, precision_error);
}

TEST_CASE("padic equals is agreement at shared precision") {
    Padic a = Padic::from_int(3, 10, 4);       // 10 = 1 + 3^2, val 0
    Padic b = Padic::from_int(3, 10 + 81, 4);  // differs beyond 4 digits
    CHECK(a.equals(b));
    Padic c = Padic::from_int(3, 11, 4);
    CHECK(!a.equals(c));
}

TEST_CASE("teichmuller representatives") {
    CHECK(teichmuller(3, 1).equals(Padic::from_int(3, 1)));
    // p=3, r=2: the order-2 root of unity is -1 = 26 mod 27
    Padic t = teichmuller(3, 2, 3);
    CHECK(t.shifted_residue(0, 3) == 26);
    // p=5, r=2: Hensel x <- x^p stabilizes at 7 mod 25
    Padic t5 = teichmuller(5, 2, 2);
    CHECK(t5.shifted_residue(0, 2) == 7);
}

TEST_CASE("teichmuller roots of unity (property)") {
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        Padic one = Padic::from_int(p, 1);
        for (uint32_t r = 1; r < p; ++r) {
            Padic t = teichmuller(p, r);
            CHECK(t.pow(static_cast<int>(p - 1)).equals(one));
            CHECK(t.shifted_residue(0, 1) == r);
        }
    }
}

TEST_CASE("shifted_residue extraction") {
    Padic x = Padic::from_rational(3, 5, 9);
    CHECK(x.val() == -2);
    CHECK(x.shifted_residue(2, 1) == 2);  // 5 mod 3
    CHECK_THROWS_AS(x.shifted_residue(0, 1), domain_error);
}
