#include "doctest.h"
#include "shalika/characters.hpp"

#include <random>

using namespace shalika;

namespace {
std::shared_ptr<const ResidueField> F4() {
    // k of the middle family at p=2: X^2 - X - 1 = X^2 + X + 1 over F_2
    return std::make_shared<ResidueField>(2, std::vector<uint32_t>{1, 1});
}
std::shared_ptr<const ResidueField> F9() {
    // X^2 - X - 1 over F_3
    return std::make_shared<ResidueField>(3, std::vector<uint32_t>{2, 2});
}
std::shared_ptr<const ResidueField> F81() {
    // X^4 - X^2 - 1 over F_3
    return std::make_shared<ResidueField>(3, std::vector<uint32_t>{2, 0, 2, 0});
}
}  // namespace

TEST_CASE("irreducibility screening") {
    CHECK(ResidueField::is_irreducible(2, {1, 1}));        // X^2+X+1
    CHECK(!ResidueField::is_irreducible(2, {1, 0}));       // X^2+1 = (X+1)^2
    CHECK(ResidueField::is_irreducible(3, {2, 0, 2, 0}));  // X^4-X^2-1
    CHECK(!ResidueField::is_irreducible(3, {1, 0, 1, 0})); // X^4+X^2+1 over F_3
    CHECK_THROWS_AS(ResidueField(2, std::vector<uint32_t>{1, 0}), domain_error);
}

TEST_CASE("field arithmetic and dlog tables") {
    auto F = F9();
    CHECK(F->q() == 9);
    // the generator is the lexicographically smallest primitive element
    CHECK(F->generator() == F->x_class());
    for (uint32_t a = 1; a < 9; ++a) {
        CHECK(F->mul(a, F->inv(a)) == 1);
        CHECK(F->exp(F->dlog(a)) == a);
    }
    // norm to F_3 is x^{(q-1)/(p-1)} = x^4
    CHECK(F->norm_to_prime(F->generator()) == 2);  // generator norm generates F_3^x
}

TEST_CASE("char_eval examples") {
    auto F = F9();
    MultChar triv{F, 0};
    for (uint32_t x = 1; x < 9; ++x) CHECK(triv(x) == Cyc::one());
    // quadratic character takes -1 on a generator
    MultChar quad{F, 4};
    CHECK(quad(F->generator()) == -Cyc::one());
    // p=2, d=2, t=1 on the generator of F_4
    auto G = F4();
    MultChar chi{G, 1};
    CHECK(chi(G->generator()) == Cyc::root(3, 1));
    FFElem zero{G, 0};
    CHECK_THROWS_AS(char_eval(chi, zero), domain_error);
}

TEST_CASE("char multiplicativity, exhaustive over small fields") {
    for (auto F : {F4(), F9(), F81()}) {
        MultChar chi{F, 1 + F->q() % 5};
        for (uint32_t x = 1; x < F->q(); ++x)
            for (uint32_t y = 1; y < F->q(); ++y)
                CHECK(chi(F->mul(x, y)) == chi(x) * chi(y));
    }
}

TEST_CASE("tame characters") {
    TameChar triv = TameChar::trivial(3);
    CHECK(tame_eval(triv, Padic::from_int(3, 7)) == Cyc::one());

    // eta(pi) = -1, trivial on units: even valuation kills it
    TameChar ur{MultChar{ResidueField::prime_field(3), 0}, RootOfUnity{2, 1}};
    CHECK(tame_eval(ur, Padic::from_int(3, 9)) == Cyc::one());
    CHECK(tame_eval(ur, Padic::from_int(3, 3)) == -Cyc::one());

    // p=3 Legendre symbol: 2 is a non-square mod 3
    TameChar leg{MultChar{ResidueField::prime_field(3), 1}, RootOfUnity{1, 0}};
    CHECK(tame_eval(leg, Padic::from_int(3, 2)) == -Cyc::one());
    CHECK(tame_eval(leg, Padic::from_int(3, 4)) == Cyc::one());
    CHECK_THROWS_AS(tame_eval(leg, Padic::zero(3)), domain_error);
}

TEST_CASE("tame characters are trivial on 1 + P (property)") {
    std::mt19937_64 rng(3);
    TameChar eta{MultChar{ResidueField::prime_field(3), 1}, RootOfUnity{8, 3}};
    for (int i = 0; i < 500; ++i) {
        long long t = static_cast<long long>(rng() % 100000);
        Padic u = Padic::from_int(3, 1 + 3 * t);
        CHECK(tame_eval(eta, u) == Cyc::one());
    }
}
