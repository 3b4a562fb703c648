#include "shalika/gl2.hpp"

namespace shalika {

Gl2Enumerator::Gl2Enumerator(uint32_t p, int level) : p_(p), M_(level) {
    if (level < 1) throw domain_error("gl2 enumeration needs level >= 1");
    pM_ = detail::pow_u64(p, static_cast<unsigned>(level));
    raw_ = pM_ * pM_ * pM_ * pM_;
}

uint64_t Gl2Enumerator::group_size() const {
    uint64_t glp = static_cast<uint64_t>(p_ * p_ - 1) * (p_ * p_ - p_);
    uint64_t scale = 1;
    for (int i = 0; i < 4 * (M_ - 1); ++i) scale *= p_;
    return glp * scale;
}

bool Gl2Enumerator::decode(uint64_t raw, Entry& out) const {
    out.a = raw % pM_;
    raw /= pM_;
    out.b = raw % pM_;
    raw /= pM_;
    out.c = raw % pM_;
    raw /= pM_;
    out.d = raw % pM_;
    uint64_t det = (out.a % p_) * (out.d % p_) + p_ * p_ - (out.b % p_) * (out.c % p_);
    return det % p_ != 0;
}

Mat2 Gl2Enumerator::lift(const Entry& e, int prec) const {
    Mat2 h = Mat2::zero(p_);
    h(0, 0) = Padic::from_int(p_, static_cast<long long>(e.a), prec);
    h(0, 1) = Padic::from_int(p_, static_cast<long long>(e.b), prec);
    h(1, 0) = Padic::from_int(p_, static_cast<long long>(e.c), prec);
    h(1, 1) = Padic::from_int(p_, static_cast<long long>(e.d), prec);
    return h;
}

IwahoriCell iwahori_classify(const Mat2& h) {
    Padic det = h.det();
    if (det.is_zero() || det.val() != 0) throw domain_error("iwahori_classify expects h in GL(2, O)");
    if (val_ge(h(1, 0), 1)) return IwahoriCell::Iwahori;
    return IwahoriCell::Bruhat;
}

Mat4 shalika_embed(int r, const Mat2& h, const Padic& x) {
    uint32_t p = h.prime();
    Padic wr = Padic::from_int(p, static_cast<long long>(p)).pow(r);
    Padic h11r = h(0, 0) * wr;
    Padic h12r = h(0, 1) * wr;
    Mat4 m = Mat4::zero(p);
    m(0, 0) = h11r;
    m(0, 2) = h12r;
    m(1, 1) = h11r;
    m(1, 3) = h12r;
    m(2, 0) = h(1, 0);
    m(2, 1) = h11r * x;
    m(2, 2) = h(1, 1);
    m(2, 3) = h12r * x;
    m(3, 1) = h(1, 0);
    m(3, 3) = h(1, 1);
    return m;
}

}  // namespace shalika
