#pragma once

#include <array>
#include <initializer_list>

#include "shalika/padic.hpp"

namespace shalika {

// Small dense matrix over Padic with exact arithmetic at tracked precision.
template <int N>
class Mat {
public:
    Mat() = default;

    static Mat zero(uint32_t p) {
        Mat m;
        for (auto& e : m.a_) e = Padic::zero(p);
        return m;
    }
    static Mat identity(uint32_t p, int prec = -1) {
        Mat m = zero(p);
        for (int i = 0; i < N; ++i) m(i, i) = Padic::from_int(p, 1, prec);
        return m;
    }
    static Mat scalar(const Padic& s) {
        Mat m = zero(s.prime());
        for (int i = 0; i < N; ++i) m(i, i) = s;
        return m;
    }

    Padic& operator()(int i, int j) { return a_[i * N + j]; }
    const Padic& operator()(int i, int j) const { return a_[i * N + j]; }

    uint32_t prime() const { return a_[0].prime(); }

    Mat operator+(const Mat& o) const {
        Mat r;
        for (int i = 0; i < N * N; ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r;
        for (int i = 0; i < N * N; ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r = zero(prime());
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const Padic& x = (*this)(i, k);
                if (x.is_zero() && x.zero_is_exact()) continue;
                for (int j = 0; j < N; ++j)
                    r(i, j) = r(i, j) + x * o(k, j);
            }
        return r;
    }
    Mat operator*(const Padic& s) const {
        Mat r;
        for (int i = 0; i < N * N; ++i) r.a_[i] = a_[i] * s;
        return r;
    }

    Padic trace() const {
        Padic t = (*this)(0, 0);
        for (int i = 1; i < N; ++i) t = t + (*this)(i, i);
        return t;
    }

    Padic det() const;
    Mat adjugate() const;
    Mat inverse() const {
        Padic d = det();
        if (d.is_zero()) throw domain_error("singular matrix");
        return adjugate() * d.inv();
    }

    Mat pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Mat acc = identity(prime());
        Mat base = *this;
        unsigned n = static_cast<unsigned>(e);
        while (n) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    bool equals(const Mat& o) const {
        for (int i = 0; i < N * N; ++i)
            if (!a_[i].equals(o.a_[i])) return false;
        return true;
    }

private:
    std::array<Padic, N * N> a_;
};

template <>
inline Padic Mat<2>::det() const {
    return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
}

template <>
inline Mat<2> Mat<2>::adjugate() const {
    Mat<2> r = Mat<2>::zero(prime());
    r(0, 0) = (*this)(1, 1);
    r(1, 1) = (*this)(0, 0);
    r(0, 1) = -(*this)(0, 1);
    r(1, 0) = -(*this)(1, 0);
    return r;
}

namespace detail {
// 3x3 minor determinant of a 4x4 with row r and column c removed
inline Padic minor3(const Mat<4>& m, int r, int c) {
    int rows[3], cols[3], ri = 0, ci = 0;
    for (int i = 0; i < 4; ++i)
        if (i != r) rows[ri++] = i;
    for (int j = 0; j < 4; ++j)
        if (j != c) cols[ci++] = j;
    auto e = [&](int i, int j) -> const Padic& { return m(rows[i], cols[j]); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}
}  // namespace detail

template <>
inline Padic Mat<4>::det() const {
    Padic d = Padic::zero(prime());
    for (int j = 0; j < 4; ++j) {
        const Padic& m0j = (*this)(0, j);
        if (m0j.is_zero() && m0j.zero_is_exact()) continue;
        Padic term = m0j * detail::minor3(*this, 0, j);
        d = (j % 2 == 0) ? d + term : d - term;
    }
    return d;
}

template <>
inline Mat<4> Mat<4>::adjugate() const {
    Mat<4> r = Mat<4>::zero(prime());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Padic c = detail::minor3(*this, j, i);
            r(i, j) = ((i + j) % 2 == 0) ? c : -c;
        }
    return r;
}

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

}  // namespace shalika
