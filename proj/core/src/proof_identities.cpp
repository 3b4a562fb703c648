#include "shalika/proof_identities.hpp"

namespace shalika {

namespace {
Padic rnd_int(uint32_t p, std::mt19937_64& rng, int digits, int prec) {
    uint64_t m = detail::pow_u64(p, static_cast<unsigned>(digits));
    return Padic::from_int(p, static_cast<long long>(rng() % m), prec);
}

Padic rnd_unit(uint32_t p, std::mt19937_64& rng, int digits, int prec) {
    while (true) {
        Padic u = rnd_int(p, rng, digits, prec);
        if (!u.is_zero() && u.val() == 0) return u;
    }
}
}  // namespace

ProofParams draw_proof_params(const FamilyContext& ctx, ProofCase pc, std::mt19937_64& rng) {
    uint32_t p = ctx.p();
    int prec = ctx.prec();
    const FamilySpec& fs = ctx.spec();
    Padic pi = Padic::from_int(p, p, prec);
    ProofParams pr;
    const int dg = 6;

    if (fs.kind == FamilyKind::Middle) {
        Padic c = Padic::from_int(p, fs.c, prec), d = Padic::from_int(p, fs.d, prec);
        if (pc == ProofCase::T0) {
            while (true) {
                pr.x0 = rnd_int(p, rng, dg, prec);
                pr.x1 = rnd_int(p, rng, dg, prec);
                Padic lin = pr.x0 * c + pr.x1 * d;
                Padic q = pr.x0 * pr.x0 * c + pr.x0 * pr.x1 * d - pr.x1 * pr.x1;
                if (lin.is_zero() || lin.val() != 0) continue;
                if (q.is_zero() || q.val() != 0) continue;
                pr.h22 = lin + pi * rnd_int(p, rng, dg, prec);
                pr.h21 = pr.x1 * pi + pi * pi * rnd_int(p, rng, dg, prec);
                pr.h11 = q * c / lin + pi * rnd_int(p, rng, dg, prec);
                pr.x = pi * rnd_int(p, rng, dg, prec);
                return pr;
            }
        }
        // T1: d must be a unit for the closed forms of this cell
        if (d.is_zero() || d.val() != 0)
            throw domain_error("middle T1 closed forms require d a unit");
        pr.x1 = rnd_unit(p, rng, dg, prec);
        pr.h21 = -pr.x1 * c / d + pi * rnd_int(p, rng, dg, prec);
        pr.h12 = -pr.x1 * c * c / d + pi * rnd_int(p, rng, dg, prec);
        pr.h22 = rnd_int(p, rng, dg, prec);
        pr.x = pi * rnd_int(p, rng, dg, prec);
        return pr;
    }

    // biquadratic
    Padic a = Padic::from_int(p, fs.a, prec), b = Padic::from_int(p, fs.b, prec);
    if (pc == ProofCase::T0) {
        while (true) {
            pr.x0 = rnd_int(p, rng, dg, prec);
            pr.x2 = rnd_int(p, rng, dg, prec);
            Padic lin = pr.x0 + pr.x2 * b;
            Padic q = pr.x0 * pr.x0 + pr.x0 * pr.x2 * b - pr.x2 * pr.x2 * a;
            if (lin.is_zero() || lin.val() != 0) continue;
            if (q.is_zero() || q.val() != 0) continue;
            pr.h21 = pr.x2 * pi * pi + pi.pow(3) * rnd_int(p, rng, dg, prec);
            pr.h22 = lin + pi * rnd_int(p, rng, dg, prec);
            pr.h11 = q / lin + pi * rnd_int(p, rng, dg, prec);
            pr.x = pi * pi * rnd_int(p, rng, dg, prec);
            return pr;
        }
    }
    if (pc == ProofCase::T1) {
        pr.x2 = rnd_unit(p, rng, dg, prec);
        pr.vteich = teichmuller(p, 1 + static_cast<uint32_t>(rng() % (p - 1)), prec);
        pr.h22 = pr.vteich + pi * rnd_int(p, rng, dg, prec);
        pr.h11 = -pr.x2 * pr.x2 * a / pr.vteich + pi * rnd_int(p, rng, dg, prec);
        pr.h21 = pr.x2 * pi + pi * pi * rnd_int(p, rng, dg, prec);
        pr.x = pi * pi * rnd_int(p, rng, dg, prec);
        return pr;
    }
    // T2
    pr.x2 = rnd_unit(p, rng, dg, prec);
    pr.h21 = pr.x2 + pi * rnd_int(p, rng, dg, prec);
    pr.h12 = pr.x2 * a + pi * rnd_int(p, rng, dg, prec);
    pr.h22 = rnd_int(p, rng, dg, prec);
    pr.x = pi * pi * rnd_int(p, rng, dg, prec);
    return pr;
}

bool verify_proof_decomposition(const FamilyContext& ctx, ProofCase pc, const ProofParams& pr) {
    uint32_t p = ctx.p();
    int prec = ctx.prec();
    const FamilySpec& fs = ctx.spec();
    Padic pi = Padic::from_int(p, p, prec);
    Padic one = Padic::from_int(p, 1, prec);
    Mat4 u = Mat4::identity(p, prec);
    Mat4 z = Mat4::identity(p, prec);
    Mat4 emb, alpha, pik = Mat4::identity(p, prec);
    RootOfUnity psi4_stated{1, 0}, psib_stated{1, 0};

    if (fs.kind == FamilyKind::Middle) {
        Padic c = Padic::from_int(p, fs.c, prec), d = Padic::from_int(p, fs.d, prec);
        if (pc == ProofCase::T0) {
            const Padic &x0 = pr.x0, &x1 = pr.x1, &h11 = pr.h11, &h21 = pr.h21, &h22 = pr.h22,
                        &x = pr.x;
            Padic lin = x0 * c + x1 * d;
            Padic q = x0 * x0 * c + x0 * x1 * d - x1 * x1;
            if (q.is_zero() || q.val() != 0 || lin.is_zero() || lin.val() != 0)
                throw domain_error("middle T0 params violate the unit constraints");
            Mat2 h = Mat2::zero(p);
            h(0, 0) = h11;
            h(1, 0) = h21;
            h(1, 1) = h22;
            alpha = shalika_embed(0, h, x);
            emb = ctx.embed_unit({x0 * c, x1});
            u(0, 2) = -(x1 * c) / (h22 * pi);
            u(1, 3) = u(0, 2);
            Padic e = x0 * c + x1 * d - h22;
            z(0, 0) = (h21 * x1 * c * e + h11 * h22 * lin * pi) / (h22 * c * q * pi);
            z(1, 1) = z(0, 0);
            z(0, 1) = h11 * x * x1 * e / (h22 * q * pi);
            z(0, 2) = x1 * e / (q * pi);
            z(1, 3) = z(0, 2);
            Padic f = h22 * x0 - x1 * x1;
            z(2, 0) = (h21 * c * f - h11 * h22 * x1 * pi) / (h22 * c * q);
            z(3, 1) = z(2, 0);
            z(2, 1) = h11 * x * f / (h22 * q);
            z(2, 2) = f / q;
            z(3, 3) = z(2, 2);
        } else if (pc == ProofCase::T1) {
            const Padic &x1 = pr.x1, &h12 = pr.h12, &h21 = pr.h21, &h22 = pr.h22, &x = pr.x;
            if (x1.is_zero() || x1.val() != 0) throw domain_error("middle T1 needs x1 a unit");
            Mat2 h = Mat2::zero(p);
            h(0, 1) = h12;
            h(1, 0) = h21;
            h(1, 1) = h22;
            alpha = shalika_embed(-2, h, x);
            Padic cd2 = c + d * d;
            emb = ctx.embed_unit({-x1 * cd2 / d, x1});
            pik = ctx.stratum().beta.pow(2);
            Padic s = h21 * d + x1 * c;
            u(0, 2) = -(c * (h21 * d + x1 * cd2)) / (h21 * d * d * pi);
            u(1, 3) = u(0, 2);
            z(0, 0) = -(h21 * d) / (x1 * c);
            z(1, 1) = z(0, 0);
            z(0, 2) = -(h22 * d) / (x1 * c);
            z(1, 3) = z(0, 2);
            z(0, 3) = -(h12 * x * d) / (x1 * c * pi * pi);
            z(2, 0) = -(cd2 * s * pi) / (x1 * c * c * d);
            z(3, 1) = z(2, 0);
            z(2, 3) = -(h12 * x * cd2 * s) / (h21 * x1 * c * c * d * pi);
            z(2, 2) = -(h12 * h21 * d * d + h22 * cd2 * s * pi) / (h21 * x1 * c * c * d);
            z(3, 3) = z(2, 2);
        } else {
            throw domain_error("middle family has cases T0 and T1 only");
        }
    } else if (fs.kind == FamilyKind::Biquadratic) {
        Padic a = Padic::from_int(p, fs.a, prec), b = Padic::from_int(p, fs.b, prec);
        if (pc == ProofCase::T0) {
            const Padic &x0 = pr.x0, &x2 = pr.x2, &h11 = pr.h11, &h21 = pr.h21, &h22 = pr.h22,
                        &x = pr.x;
            Padic lin = x0 + x2 * b;
            Padic q = x0 * x0 + x0 * x2 * b - x2 * x2 * a;
            if (q.is_zero() || q.val() != 0 || lin.is_zero() || lin.val() != 0)
                throw domain_error("biquadratic T0 params violate the unit constraints");
            Mat2 h = Mat2::zero(p);
            h(0, 0) = h11;
            h(1, 0) = h21;
            h(1, 1) = h22;
            alpha = shalika_embed(0, h, x);
            emb = ctx.embed_unit({x0, Padic::zero(p), x2, Padic::zero(p)});
            Padic w2 = pi * pi;
            Padic r2 = h22 * x0 * w2 - h21 * x2 * a;
            u(0, 2) = -(a * h11 * x2) / r2;
            u(1, 3) = u(0, 2);
            Padic s = h21 * x2 * a + h11 * lin * w2 - h22 * x0 * w2;
            z(0, 0) = (h11 * h22 * x0 * lin * w2 * w2 + h21 * x2 * a * (h21 * x2 * a - h22 * x0 * w2)) /
                      (q * r2 * w2);
            z(1, 1) = z(0, 0);
            z(0, 1) = h11 * x * x2 * a * s / (q * r2 * w2);
            z(0, 2) = h22 * x2 * a * s / (q * r2 * w2);
            z(1, 3) = z(0, 2);
            Padic f = h22 * x0 * x0 * w2 - x2 * a * (h21 * x0 + h11 * x2 * w2);
            z(2, 0) = x0 * (h21 * h22 * x0 * w2 - h21 * h21 * a * x2 - h11 * h22 * x2 * w2 * w2) /
                      (q * r2);
            z(3, 1) = z(2, 0);
            z(2, 1) = h11 * x * f / (q * r2);
            z(2, 2) = h22 * f / (q * r2);
            z(3, 3) = z(2, 2);
        } else if (pc == ProofCase::T1) {
            const Padic &x2 = pr.x2, &h11 = pr.h11, &h21 = pr.h21, &h22 = pr.h22, &x = pr.x;
            if (x2.is_zero() || x2.val() != 0) throw domain_error("biquadratic T1 needs x2 a unit");
            Mat2 h = Mat2::zero(p);
            h(0, 0) = h11;
            h(1, 0) = h21;
            h(1, 1) = h22;
            alpha = shalika_embed(-2, h, x);
            emb = ctx.embed_unit({-x2 * b, Padic::zero(p), x2, Padic::zero(p)});
            pik = Mat4::scalar(pi.inv());
            Padic w2 = pi * pi;
            Padic e = h11 + x2 * b * pi;
            u(0, 1) = -(x * e) / (h21 * w2);
            u(0, 2) = e / (h21 * w2);
            u(1, 3) = u(0, 2);
            u(0, 3) = -(x * b * e) / (h21 * w2 * w2);
            u(2, 3) = x * (e - h21 * b) / (h21 * w2);
            Padic s = h21 * b - e;
            z(0, 0) = h21 / (x2 * pi);
            z(1, 1) = z(0, 0);
            z(0, 1) = x * b * (h21 - x2 * pi) / (x2 * pi * w2);
            z(0, 2) = h22 / (x2 * pi);
            z(1, 3) = z(0, 2);
            z(0, 3) = h22 * x * s / (h21 * x2 * pi * w2);
            z(2, 0) = b * (h21 - x2 * pi) * pi / (x2 * a);
            z(3, 1) = z(2, 0);
            z(2, 1) = x * b * b * (h21 - x2 * pi) / (x2 * a * pi);
            z(2, 3) = h22 * x * b * s / (h21 * x2 * a * pi);
            z(2, 2) = h22 * s * pi / (h21 * x2 * a);
            z(3, 3) = z(2, 2);
            Padic barg = b * x / w2;
            psib_stated = psi_F_root(barg);
            psi4_stated = psib_stated.inverse();
        } else {
            const Padic &x2 = pr.x2, &h12 = pr.h12, &h21 = pr.h21, &h22 = pr.h22, &x = pr.x;
            if (x2.is_zero() || x2.val() != 0) throw domain_error("biquadratic T2 needs x2 a unit");
            Mat2 h = Mat2::zero(p);
            h(0, 1) = h12;
            h(1, 0) = h21;
            h(1, 1) = h22;
            alpha = shalika_embed(-4, h, x);
            emb = ctx.embed_unit({-x2 * b, Padic::zero(p), x2, Padic::zero(p)});
            pik = Mat4::scalar((pi * pi).inv());
            Padic w2 = pi * pi;
            u(0, 2) = x2 * b / (h21 * w2);
            u(1, 3) = u(0, 2);
            z(0, 0) = h21 / x2;
            z(1, 1) = z(0, 0);
            z(0, 2) = h22 / x2;
            z(1, 3) = z(0, 2);
            z(0, 3) = h12 * x / (x2 * w2 * w2);
            z(2, 0) = b * (h21 - x2) * w2 / (x2 * a);
            z(3, 1) = z(2, 0);
            z(2, 3) = h12 * x * b * (h21 - x2) / (x2 * a * h21 * w2);
            z(2, 2) = (h12 * h21 + h22 * b * (h21 - x2) * w2) / (h21 * x2 * a);
            z(3, 3) = z(2, 2);
        }
    } else {
        throw domain_error("proof decompositions exist for middle and biquadratic families");
    }

    if (!ctx.order().in_unit_group_level(z, 1)) return false;
    Mat4 prod = u * pik * emb * z;
    if (!prod.equals(alpha)) return false;
    Padic psi4_arg = u(0, 1) + u(1, 2) + u(2, 3);
    if (!(psi_F_root(psi4_arg) == psi4_stated)) return false;
    if (!(ctx.psi_beta_root(z) == psib_stated)) return false;
    (void)one;
    return true;
}

}  // namespace shalika
