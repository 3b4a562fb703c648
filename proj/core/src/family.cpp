#include "shalika/family.hpp"

namespace shalika {

FamilySpec FamilySpec::simple(uint32_t p, uint32_t v, uint32_t phi_exp, RootOfUnity zeta) {
    FamilySpec f;
    f.p = p;
    f.kind = FamilyKind::Simple;
    f.v = v;
    f.char_exp = phi_exp;
    f.zeta = zeta;
    f.validate();
    return f;
}

FamilySpec FamilySpec::middle(uint32_t p, long long c, long long d, uint32_t chi_exp, RootOfUnity zeta) {
    FamilySpec f;
    f.p = p;
    f.kind = FamilyKind::Middle;
    f.c = c;
    f.d = d;
    f.char_exp = chi_exp;
    f.zeta = zeta;
    f.validate();
    return f;
}

FamilySpec FamilySpec::biquadratic(uint32_t p, long long a, long long b, uint32_t chi_exp, RootOfUnity zeta) {
    FamilySpec f;
    f.p = p;
    f.kind = FamilyKind::Biquadratic;
    f.a = a;
    f.b = b;
    f.char_exp = chi_exp;
    f.zeta = zeta;
    f.validate();
    return f;
}

FamilySpec FamilySpec::twisted(const TameChar& eta) const {
    FamilySpec f = *this;
    f.twist = eta;
    return f;
}

namespace {
uint32_t mod_p(long long x, uint32_t p) {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}
}  // namespace

void FamilySpec::validate() const {
    if (p < 2) throw domain_error("p must be a prime >= 2");
    switch (kind) {
        case FamilyKind::Simple:
            if (v % p == 0) throw domain_error("simple family requires a unit v");
            break;
        case FamilyKind::Middle: {
            // f = X^2 - dX - c irreducible mod p
            std::vector<uint32_t> low{mod_p(-c, p), mod_p(-d, p)};
            if (!ResidueField::is_irreducible(p, low))
                throw domain_error("middle family: X^2 - dX - c is reducible mod p");
            break;
        }
        case FamilyKind::Biquadratic: {
            if (p == 2)
                throw domain_error(
                    "biquadratic family requires p odd: over F_2 every biquadratic "
                    "quartic is a square");
            std::vector<uint32_t> low{mod_p(-a, p), 0, mod_p(-b, p), 0};
            if (!ResidueField::is_irreducible(p, low))
                throw domain_error("biquadratic family: X^4 - bX^2 - a is reducible mod p");
            break;
        }
    }
}

const char* FamilySpec::kind_name() const {
    switch (kind) {
        case FamilyKind::Simple: return "simple";
        case FamilyKind::Middle: return "middle";
        case FamilyKind::Biquadratic: return "biquadratic";
    }
    return "?";
}

void FamilyContext::build_stratum() {
    uint32_t p = spec_.p;
    Padic pi = Padic::from_int(p, p, prec_);
    Mat4 beta = Mat4::zero(p);
    switch (spec_.kind) {
        case FamilyKind::Simple: {
            Padic vlift = teichmuller(p, spec_.v, prec_);
            beta(0, 3) = (vlift * pi).inv();
            beta(1, 0) = Padic::from_int(p, 1, prec_);
            beta(2, 1) = Padic::from_int(p, 1, prec_);
            beta(3, 2) = Padic::from_int(p, 1, prec_);
            stratum_ = StratumData{beta, OrderSpec::minimal_order(), 4, 1, -1};
            break;
        }
        case FamilyKind::Middle: {
            beta(0, 3) = Padic::from_int(p, spec_.c, prec_) * pi.pow(-2);
            beta(1, 0) = Padic::from_int(p, 1, prec_);
            beta(2, 1) = Padic::from_int(p, 1, prec_);
            beta(2, 3) = Padic::from_int(p, spec_.d, prec_) * pi.inv();
            beta(3, 2) = Padic::from_int(p, 1, prec_);
            stratum_ = StratumData{beta, OrderSpec::middle_order(), 2, 2, -2};
            break;
        }
        case FamilyKind::Biquadratic: {
            beta(0, 3) = Padic::from_int(p, spec_.a, prec_) * pi.pow(-4);
            beta(1, 0) = Padic::from_int(p, 1, prec_);
            beta(2, 1) = Padic::from_int(p, 1, prec_);
            beta(2, 3) = Padic::from_int(p, spec_.b, prec_) * pi.pow(-2);
            beta(3, 2) = Padic::from_int(p, 1, prec_);
            stratum_ = StratumData{beta, OrderSpec::maximal_order_conj(), 1, 4, -4};
            break;
        }
    }
}

StratumData beta_matrix(const FamilySpec& fam, int prec) {
    FamilyContext ctx(fam, prec);
    return ctx.stratum();
}

FamilyContext::FamilyContext(const FamilySpec& spec, int prec) : spec_(spec) {
    spec_.validate();
    prec_ = prec < 0 ? Padic::max_digits(spec.p) : prec;
    build_stratum();
    uint32_t p = spec_.p;
    switch (spec_.kind) {
        case FamilyKind::Simple: {
            kE_ = ResidueField::prime_field(p);
            unit_rank_ = 1;
            sigma_res_ = 0;
            pi_ = stratum_.beta;
            pi_det_val_ = -1;
            break;
        }
        case FamilyKind::Middle: {
            kE_ = std::make_shared<ResidueField>(
                p, std::vector<uint32_t>{mod_p(-spec_.c, p), mod_p(-spec_.d, p)});
            unit_rank_ = 2;
            sigma_ = stratum_.beta.pow(2) * Padic::from_int(p, p, prec_);
            sigma_res_ = kE_->x_class();
            pi_ = stratum_.beta;
            pi_det_val_ = -2;
            break;
        }
        case FamilyKind::Biquadratic: {
            kE_ = std::make_shared<ResidueField>(
                p, std::vector<uint32_t>{mod_p(-spec_.a, p), 0, mod_p(-spec_.b, p), 0});
            unit_rank_ = 4;
            sigma_ = stratum_.beta * Padic::from_int(p, p, prec_);
            sigma_res_ = kE_->x_class();
            pi_ = Mat4::scalar(Padic::from_int(p, p, prec_));
            pi_det_val_ = 4;
            break;
        }
    }
    chi_ = MultChar{kE_, spec_.char_exp % (kE_->q() - 1)};
    build_unit_tables();
}

Mat4 FamilyContext::embed_unit(const std::vector<Padic>& coords) const {
    uint32_t p = spec_.p;
    if (spec_.kind == FamilyKind::Simple) return Mat4::scalar(coords.at(0));
    Mat4 acc = Mat4::scalar(coords.at(0));
    Mat4 pw = sigma_;
    for (int i = 1; i < unit_rank_; ++i) {
        acc = acc + pw * coords.at(i);
        if (i + 1 < unit_rank_) pw = pw * sigma_;
    }
    return acc;
}

std::vector<uint32_t> FamilyContext::residue_coords(uint32_t xi) const {
    std::vector<uint32_t> poly = kE_->decode(xi);
    if (spec_.kind == FamilyKind::Middle) {
        // basis {c, sigma}: xi = a0 + a1 X = (a0 c^{-1}) c + a1 sigma
        uint32_t p = spec_.p;
        uint32_t cbar = mod_p(spec_.c, p);
        uint32_t cinv = 1;
        for (uint32_t t = 1; t < p; ++t)
            if (t * cbar % p == 1) cinv = t;
        poly[0] = poly[0] * cinv % p;
    }
    return poly;
}

void FamilyContext::build_unit_tables() {
    uint32_t p = spec_.p, q = kE_->q();
    teich_.resize(q);
    teich_inv_.resize(q);
    beta_teich_inv_.resize(q);
    teich_red_.assign(q, {});
    // Teichmueller lifts in O_E = O_F[sigma]/(min poly), by Frobenius iteration
    int dE = spec_.kind == FamilyKind::Simple ? 1 : unit_rank_;
    for (uint32_t xi = 1; xi < q; ++xi) {
        std::vector<Padic> t(dE, Padic::zero(p));
        {
            auto coeffs = kE_->decode(xi);
            for (int i = 0; i < dE; ++i)
                t[static_cast<size_t>(i)] = Padic::from_int(p, coeffs[static_cast<size_t>(i)], prec_);
        }
        if (spec_.kind == FamilyKind::Simple) {
            t[0] = teichmuller(p, xi, prec_);
        } else {
            // t <- t^{q} until fixed at working precision
            auto mul = [&](const std::vector<Padic>& x, const std::vector<Padic>& y) {
                std::vector<Padic> prod(2 * dE - 1, Padic::zero(p));
                for (int i = 0; i < dE; ++i)
                    for (int j = 0; j < dE; ++j) prod[i + j] = prod[i + j] + x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
                // reduce by sigma^2 = d sigma + c (middle) or sigma^4 = b sigma^2 + a
                for (int i = 2 * dE - 2; i >= dE; --i) {
                    Padic lead = prod[static_cast<size_t>(i)];
                    if (lead.is_zero() && lead.zero_is_exact()) continue;
                    prod[static_cast<size_t>(i)] = Padic::zero(p);
                    if (spec_.kind == FamilyKind::Middle) {
                        prod[static_cast<size_t>(i - 1)] = prod[static_cast<size_t>(i - 1)] + lead * Padic::from_int(p, spec_.d, prec_);
                        prod[static_cast<size_t>(i - 2)] = prod[static_cast<size_t>(i - 2)] + lead * Padic::from_int(p, spec_.c, prec_);
                    } else {
                        prod[static_cast<size_t>(i - 2)] = prod[static_cast<size_t>(i - 2)] + lead * Padic::from_int(p, spec_.b, prec_);
                        prod[static_cast<size_t>(i - 4)] = prod[static_cast<size_t>(i - 4)] + lead * Padic::from_int(p, spec_.a, prec_);
                    }
                }
                prod.resize(dE);
                return prod;
            };
            auto powq = [&](std::vector<Padic> x) {
                std::vector<Padic> acc(dE, Padic::zero(p));
                acc[0] = Padic::from_int(p, 1, prec_);
                uint64_t e = q;
                while (e) {
                    if (e & 1) acc = mul(acc, x);
                    x = mul(x, x);
                    e >>= 1;
                }
                return acc;
            };
            for (int it = 0; it < prec_ + 2; ++it) {
                auto next = powq(t);
                bool fixed = true;
                for (int i = 0; i < dE; ++i)
                    if (!next[static_cast<size_t>(i)].equals(t[static_cast<size_t>(i)])) fixed = false;
                t = std::move(next);
                if (fixed) break;
            }
        }
        Mat4 emb = embed_unit(t);
        teich_[xi] = emb;
        teich_inv_[xi] = emb.inverse();
        beta_teich_inv_[xi] = stratum_.beta * teich_inv_[xi];
        uint64_t key = reduced_key(emb, teich_red_[xi].data());
        residue_index_[key] = xi;
    }
}

uint64_t FamilyContext::reduced_key(const Mat4& m, uint8_t* out16) const {
    const ValGrid& L = order().grid();
    uint64_t key = 0;
    uint32_t p = spec_.p;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            uint8_t digit = static_cast<uint8_t>(m(i, j).shifted_residue(L[i][j], 1));
            if (out16) out16[4 * i + j] = digit;
            key = key * p + digit;
        }
    return key;
}

std::optional<uint32_t> FamilyContext::residue_lookup(uint64_t key) const {
    auto it = residue_index_.find(key);
    if (it == residue_index_.end()) return std::nullopt;
    return it->second;
}

const Mat4& FamilyContext::pi_pow(int k) const {
    std::lock_guard<std::mutex> lk(pi_mu_);
    auto it = pi_pow_.find(k);
    if (it != pi_pow_.end()) return it->second;
    return pi_pow_.emplace(k, pi_.pow(k)).first->second;
}

const Mat4& FamilyContext::pi_pow_inv(int k) const {
    std::lock_guard<std::mutex> lk(pi_mu_);
    auto it = pi_pow_inv_.find(k);
    if (it != pi_pow_inv_.end()) return it->second;
    return pi_pow_inv_.emplace(k, pi_.pow(-k)).first->second;
}

std::optional<int> FamilyContext::support_k(int det_val) const {
    if (det_val % pi_det_val_ != 0) return std::nullopt;
    return det_val / pi_det_val_;
}

RootOfUnity FamilyContext::psi_beta_root(const Mat4& z) const {
    // tr(beta (z - 1)) = tr(beta z) since tr(beta) = 0
    Padic t = Padic::zero(spec_.p);
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) {
            const Padic& b = stratum_.beta(i, l);
            if (b.is_zero() && b.zero_is_exact()) continue;
            t = t + b * z(l, i);
        }
    return psi_F_root(t);
}

Cyc FamilyContext::psi_beta(const Mat4& z) const { return Cyc::root(psi_beta_root(z)); }

Cyc psi_beta(const FamilyContext& ctx, const Mat4& z) {
    if (!ctx.order().in_unit_group_level(z, 1)) throw domain_error("psi_beta requires z in U^1");
    return ctx.psi_beta(z);
}

FamilyContext::LambdaCharge FamilyContext::lambda_charge(int k, uint32_t xi) const {
    if (spec_.kind == FamilyKind::Biquadratic) {
        // Lambda(pi_F) = zeta^{-1} chi(sigma)
        uint32_t arg = kE_->mul(xi, kE_->pow(sigma_res_, static_cast<uint64_t>(((k % static_cast<long long>(kE_->q() - 1)) + kE_->q() - 1)) % (kE_->q() - 1)));
        return LambdaCharge{-k, arg};
    }
    return LambdaCharge{k, xi};
}

RootOfUnity FamilyContext::lambda_root(int k, uint32_t xi, const Mat4& z) const {
    LambdaCharge ch = lambda_charge(k, xi);
    RootOfUnity out = spec_.zeta.pow(ch.zeta_pow);
    out = out * chi_.value_root(ch.chi_arg);
    out = out * psi_beta_root(z);
    return out;
}

std::optional<TypeDecomposition> FamilyContext::j_membership(const Mat4& m) const {
    if (!order().contains(m)) return std::nullopt;
    Padic det = m.det();
    if (det.is_zero() || det.val() != 0) return std::nullopt;
    if (!order().contains(m.inverse())) return std::nullopt;
    uint64_t key = reduced_key(m, nullptr);
    auto xi = residue_lookup(key);
    if (!xi) return std::nullopt;
    TypeDecomposition dec;
    dec.k = 0;
    dec.xi = *xi;
    dec.coords = residue_coords(*xi);
    dec.z = teich_inv_[*xi] * m;
    dec.u = Mat4::identity(spec_.p, prec_);
    return dec;
}

std::optional<TypeDecomposition> FamilyContext::bold_j_decompose(const Mat4& g) const {
    Padic det = g.det();
    if (det.is_zero()) return std::nullopt;
    auto k = support_k(det.val());
    if (!k) return std::nullopt;
    Mat4 m = pi_pow_inv(*k) * g;
    auto dec = j_membership(m);
    if (!dec) return std::nullopt;
    dec->k = *k;
    return dec;
}

Cyc FamilyContext::lambda_eval(const TypeDecomposition& dec) const {
    return Cyc::root(lambda_root(dec.k, dec.xi, dec.z));
}

}  // namespace shalika
