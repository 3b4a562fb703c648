#include "doctest.h"
#include "shalika/gl2.hpp"

#include <random>

using namespace shalika;

namespace {
uint64_t count_invertible(uint32_t p, int M) {
    Gl2Enumerator en(p, M);
    Gl2Enumerator::Entry e;
    uint64_t n = 0;
    for (uint64_t i = 0; i < en.raw_size(); ++i)
        if (en.decode(i, e)) ++n;
    return n;
}
}  // namespace

TEST_CASE("gl2 enumeration counts") {
    CHECK(count_invertible(2, 1) == 6);    // |GL(2, F_2)|
    CHECK(count_invertible(2, 2) == 96);   // 6 * 2^4
    CHECK(count_invertible(2, 3) == 1536);
    CHECK(count_invertible(3, 1) == 48);
    CHECK(count_invertible(3, 2) == 3888);
    for (uint32_t p : {2u, 3u})
        for (int M = 1; M <= (p == 2 ? 3 : 2); ++M)
            CHECK(count_invertible(p, M) == Gl2Enumerator(p, M).group_size());
}

TEST_CASE("iwahori classification") {
    CHECK(iwahori_classify(Mat2::identity(2)) == IwahoriCell::Iwahori);
    Mat2 w = Mat2::zero(3);
    w(0, 1) = Padic::from_int(3, 1);
    w(1, 0) = Padic::from_int(3, 1);
    CHECK(iwahori_classify(w) == IwahoriCell::Bruhat);
    Mat2 lo = Mat2::identity(5);
    lo(1, 0) = Padic::from_int(5, 5);
    CHECK(iwahori_classify(lo) == IwahoriCell::Iwahori);
    Mat2 sing = Mat2::zero(2);
    sing(0, 0) = Padic::from_int(2, 1);
    CHECK_THROWS_AS(iwahori_classify(sing), domain_error);
}

TEST_CASE("shalika_embed layout") {
    // identity data gives the identity matrix
    CHECK(shalika_embed(0, Mat2::identity(2), Padic::zero(2)).equals(Mat4::identity(2)));

    // the embedded element really is sigma_4 n(n^-(x)) diag(g,g) sigma_4
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t p = (trial % 2) ? 2 : 3;
        Mat2 h = Mat2::zero(p);
        for (int i = 0; i < 4; ++i)
            h(i / 2, i % 2) = Padic::from_int(p, static_cast<long long>(rng() % 27) - 13);
        int r = static_cast<int>(rng() % 7) - 3;
        Padic x = Padic::from_rational(p, static_cast<long long>(rng() % 27) - 13,
                                       static_cast<long long>(p) * p);
        Mat4 direct = shalika_embed(r, h, x);

        Padic wr = Padic::from_int(p, p).pow(r);
        Mat4 sigma4 = Mat4::zero(p);
        sigma4(0, 0) = sigma4(1, 2) = sigma4(2, 1) = sigma4(3, 3) = Padic::from_int(p, 1);
        Mat4 nX = Mat4::identity(p);
        nX(0, 2) = Padic::zero(p);
        nX(1, 2) = x;  // n(X) with X = n^-(x): block [[0,0],[x,0]]
        Mat4 gg = Mat4::zero(p);
        Mat2 g2 = Mat2::zero(p);
        g2(0, 0) = h(0, 0) * wr;
        g2(0, 1) = h(0, 1) * wr;
        g2(1, 0) = h(1, 0);
        g2(1, 1) = h(1, 1);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                gg(i, j) = g2(i, j);
                gg(i + 2, j + 2) = g2(i, j);
            }
        Mat4 expect = sigma4 * nX * gg * sigma4;
        CHECK(direct.equals(expect));
    }
}

TEST_CASE("shalika_embed determinant valuation is 2r") {
    std::mt19937_64 rng(19);
    Gl2Enumerator en(3, 2);
    Gl2Enumerator::Entry e;
    int seen = 0;
    while (seen < 50) {
        if (!en.decode(rng() % en.raw_size(), e)) continue;
        ++seen;
        int r = static_cast<int>(rng() % 9) - 4;
        Padic x = Padic::from_int(3, static_cast<long long>(rng() % 81));
        Mat4 m = shalika_embed(r, en.lift(e), x);
        CHECK(m.det().val() == 2 * r);
    }
}

TEST_CASE("antidiagonal h at r = -2 zeroes the diagonal blocks") {
    Mat2 h = Mat2::zero(2);
    h(0, 1) = Padic::from_int(2, 1);
    h(1, 0) = Padic::from_int(2, 1);
    Mat4 m = shalika_embed(-2, h, Padic::zero(2));
    CHECK(m(0, 0).is_zero());
    CHECK(m(2, 2).is_zero());
    CHECK(m(0, 2).val() == -2);
    CHECK(m(2, 0).val() == 0);
}
