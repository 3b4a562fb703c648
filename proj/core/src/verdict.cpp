#include "shalika/verdict.hpp"

#include <sstream>

namespace shalika {

namespace {
// omega(g_F) for the Teichmueller generator of mu'_F, as an exponent on the
// canonical generator of k_F^x
MultChar restrict_to_prime(const FamilyContext& ctx) {
    uint32_t p = ctx.p();
    auto kF = ResidueField::prime_field(p);
    if (p == 2) return MultChar{kF, 0};
    uint32_t gF = kF->generator();
    // chi evaluated at the scalar image of g_F inside k_E
    RootOfUnity val = ctx.character().value_root(ctx.kE()->scalar(gF));
    // val has order dividing p - 1; express as zeta_{p-1}^s
    uint32_t s = val.m == 1 ? 0 : val.e * ((p - 1) / val.m);
    return MultChar{kF, s};
}

uint32_t mod_p_ll(long long x, uint32_t p) {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

// eta(-v pi) for the simple-family criterion
RootOfUnity eta_minus_v_pi(const FamilySpec& fam) {
    TameChar eta = fam.twist ? *fam.twist : TameChar::trivial(fam.p);
    uint32_t res = mod_p_ll(-static_cast<long long>(fam.v), fam.p);
    RootOfUnity out = eta.at_pi;
    if (res != 1 && !eta.mu.is_trivial()) out = out * eta.mu.value_root(res);
    return out;
}
}  // namespace

CentralCharacter central_character(const FamilySpec& fam) {
    FamilyContext ctx(fam);
    uint32_t p = fam.p;
    CentralCharacter w;
    w.mu = restrict_to_prime(ctx);
    RootOfUnity at_pi{1, 0};
    switch (fam.kind) {
        case FamilyKind::Simple: {
            // (zeta^4 phi(v))^{-1}
            at_pi = fam.zeta.pow(4);
            if (fam.v % p != 1) at_pi = at_pi * ctx.character().value_root(fam.v % p);
            at_pi = at_pi.inverse();
            break;
        }
        case FamilyKind::Middle:
            at_pi = fam.zeta.pow(-2) * ctx.character().value_root(ctx.sigma_residue());
            break;
        case FamilyKind::Biquadratic:
            at_pi = fam.zeta.pow(-1) * ctx.character().value_root(ctx.sigma_residue());
            break;
    }
    if (fam.twist) {
        w.mu = w.mu.times(fam.twist->mu.power(4));
        at_pi = at_pi * fam.twist->at_pi.pow(4);
    }
    w.at_pi = Cyc::root(at_pi);
    return w;
}

bool theorem_criterion(const FamilySpec& fam) {
    CentralCharacter w = central_character(fam);
    if (!w.is_trivial()) return false;
    if (fam.kind != FamilyKind::Simple) return true;
    RootOfUnity target = eta_minus_v_pi(fam);
    RootOfUnity minus_target = target * RootOfUnity{2, 1};
    return fam.zeta == target || fam.zeta == minus_target;
}

Verdict verdict(const FamilySpec& fam, const IntegralConfig& cfg, GeometryCache* cache) {
    Verdict v;
    v.family = fam;
    CentralCharacter w = central_character(fam);
    v.central_trivial = w.is_trivial();
    FamilyContext ctx(fam);
    v.report = lambda0(ctx, cfg, cache);
    v.lambda0_computed = true;
    v.lambda0_nonzero = v.report.nonzero;
    if (fam.kind == FamilyKind::Simple) {
        RootOfUnity target = eta_minus_v_pi(fam);
        v.simple_zeta_criterion =
            fam.zeta == target || fam.zeta == target * RootOfUnity{2, 1};
    }
    v.transfer = v.central_trivial && v.lambda0_nonzero;
    v.criterion_match = (v.transfer == theorem_criterion(fam));
    return v;
}

std::string LFactor::factor_string(uint32_t p) const {
    if (signs.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < signs.size(); ++i) {
        if (i) os << " * ";
        os << "(1 " << (signs[i] > 0 ? "-" : "+") << " " << p << "^(-s))^(-1)";
    }
    return os.str();
}

LFactor l_factor(const FamilySpec& fam, const IntegralConfig& cfg, GeometryCache* cache) {
    LFactor lf;
    CentralCharacter w = central_character(fam);
    if (!w.is_trivial()) return lf;
    FamilyContext ctx(fam);
    IntegralReport plus = lambda_s0_sign(ctx, +1, cfg, cache);
    IntegralReport minus = lambda_s0_sign(ctx, -1, cfg, cache);
    if (plus.nonzero) lf.signs.push_back(+1);
    if (minus.nonzero) lf.signs.push_back(-1);
    return lf;
}

FamilySpec twist_reparametrize(const FamilySpec& fam) {
    if (!fam.twist) return fam;
    const TameChar& eta = *fam.twist;
    uint32_t p = fam.p;
    FamilyContext ctx(fam);
    const auto& kE = ctx.kE();
    uint64_t n = kE->q() - 1;
    FamilySpec out = fam;
    out.twist.reset();

    // chi' from Lambda' = Lambda * (eta o det) on the Teichmueller units:
    // det(embed x) = N_{E/F}(x)^{4/[E:F]}
    uint32_t norm_power = fam.kind == FamilyKind::Simple ? 4u
                          : fam.kind == FamilyKind::Middle ? 2u
                                                           : 1u;
    if (!eta.mu.is_trivial() && n > 1) {
        uint32_t g = kE->generator();
        uint32_t ng = kE->norm_to_prime(g);  // in k_F^x
        RootOfUnity extra = eta.mu.value_root(ng).pow(norm_power);
        // express extra as zeta_n^t
        uint32_t t_extra = extra.m == 1 ? 0 : static_cast<uint32_t>(extra.e * (n / extra.m));
        out.char_exp = static_cast<uint32_t>((fam.char_exp + t_extra) % n);
    }

    // zeta' = zeta * eta(det beta)
    Padic detb = ctx.stratum().beta.det();
    RootOfUnity fac = eta.value_root(detb);
    out.zeta = fam.zeta * fac;
    return out;
}

}  // namespace shalika
