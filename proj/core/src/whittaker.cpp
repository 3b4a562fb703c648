#include "shalika/whittaker.hpp"

namespace shalika {

namespace {
constexpr int kInf = 1000;

int pval(const Padic& x) {
    if (x.is_zero()) {
        if (x.zero_is_exact()) return kInf;
        return x.abs_prec() >= 24 ? kInf : x.abs_prec();
    }
    return x.val();
}

ValGrid val_grid(const Mat4& m) {
    ValGrid g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = pval(m(i, j));
    return g;
}

int addv(int a, int b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

// lower bound for entry valuations of the adjugate
ValGrid adjugate_val_lower(const ValGrid& v) {
    ValGrid out{};
    static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int rows[3], cols[3], ri = 0, ci = 0;
            for (int r = 0; r < 4; ++r)
                if (r != j) rows[ri++] = r;
            for (int c = 0; c < 4; ++c)
                if (c != i) cols[ci++] = c;
            int best = kInf;
            for (auto& pm : perm)
                best = std::min(best, addv(addv(v[rows[0]][cols[pm[0]]], v[rows[1]][cols[pm[1]]]),
                                           v[rows[2]][cols[pm[2]]]));
            out[i][j] = best;
        }
    return out;
}

struct Pair {
    int l, lp;
};
constexpr Pair kPairs[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
}  // namespace

RootOfUnity WhittakerParts::value_root(const FamilyContext& C) const {
    if (!nonzero) throw domain_error("value_root of a vanishing Whittaker point");
    auto ch = C.lambda_charge(k, xi);
    RootOfUnity out = C.spec().zeta.pow(ch.zeta_pow);
    out = out * C.character().value_root(ch.chi_arg);
    return out * psi;
}

const WhittakerEvaluator::KData& WhittakerEvaluator::kdata(int k) {
    auto it = kcache_.find(k);
    if (it != kcache_.end()) return it->second;
    KData d{C_.pi_pow_inv(k), {}, {}};
    d.vB = val_grid(d.B);
    d.vPi = val_grid(C_.pi_pow(k));
    return kcache_.emplace(k, std::move(d)).first->second;
}

WhittakerParts WhittakerEvaluator::eval(const Mat4& g) {
    Padic det = g.det();
    if (det.is_zero()) throw domain_error("Whittaker function needs invertible g");
    return run(g, det.val(), nullptr, nullptr);
}

WhittakerParts WhittakerEvaluator::eval_at(const Mat4& g, int det_val) {
    return run(g, det_val, nullptr, nullptr);
}

bool WhittakerEvaluator::fiber_feasible(const Mat4& g_x0, int det_val, const FreeXColumn& xc) {
    return run(g_x0, det_val, nullptr, &xc).nonzero;
}

std::vector<WhittakerParts> WhittakerEvaluator::eval_all_matches(const Mat4& g) {
    std::vector<WhittakerParts> all;
    Padic det = g.det();
    if (det.is_zero()) throw domain_error("Whittaker function needs invertible g");
    run(g, det.val(), &all, nullptr);
    return all;
}

WhittakerParts WhittakerEvaluator::run(const Mat4& g, int det_val,
                                       std::vector<WhittakerParts>* all, const FreeXColumn* xc) {
    WhittakerParts out;
    auto kopt = C_.support_k(det_val);
    if (!kopt) return out;
    int k = *kopt;
    const KData& kd = kdata(k);
    const ValGrid& L = C_.order().grid();
    uint32_t p = C_.p();
    const int ncols = xc ? 7 : 6;

    ValGrid vg = val_grid(g);
    if (xc) {
        vg[2][1] = std::min(vg[2][1], pval(xc->c21));
        vg[2][3] = std::min(vg[2][3], pval(xc->c23));
    }
    ValGrid vadj = adjugate_val_lower(vg);
    int floors[7];
    for (int e = 0; e < 6; ++e) {
        int l = kPairs[e].l, lp = kPairs[e].lp;
        int best = kInf;
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t)
                best = std::min(best,
                                addv(addv(kd.vPi[l][s], L[s][t]), addv(vadj[t][lp], -det_val)));
        floors[e] = best >= kInf ? 0 : std::max(best, -40);
    }
    floors[6] = 0;  // free x slot ranges over O

    // pass 1: valuation-grid feasibility; exact constants only where needed
    int coefv[16][7];
    int W = 1;
    bool row_keep[16];
    Padic consts[16];
    bool const_ready[16];
    auto exact_const = [&](int i, int j) {
        Padic cst = Padic::zero(p);
        for (int l = 0; l < 4; ++l) {
            const Padic& b = kd.B(i, l);
            if (b.is_zero() && b.zero_is_exact()) continue;
            cst = cst + b * g(l, j);
        }
        return cst;
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int idx = 4 * i + j;
            row_keep[idx] = false;
            const_ready[idx] = false;
            int lvl = L[i][j];
            int s = 0;
            bool any_coef = false;
            for (int e = 0; e < ncols; ++e) {
                int cv;
                if (e < 6) {
                    cv = addv(addv(kd.vB[i][kPairs[e].l], vg[kPairs[e].lp][j]), floors[e]);
                } else {
                    cv = (j == 1) ? addv(kd.vB[i][2], pval(xc->c21))
                                  : (j == 3) ? addv(kd.vB[i][2], pval(xc->c23)) : kInf;
                }
                coefv[idx][e] = cv;
                if (cv < lvl) any_coef = true;
                if (cv < kInf) s = std::min(s, cv);
            }
            int cb = kInf;
            for (int l = 0; l < 4; ++l) cb = std::min(cb, addv(kd.vB[i][l], vg[l][j]));
            if (!any_coef) {
                if (cb >= lvl) continue;  // certainly satisfied
                consts[idx] = exact_const(i, j);
                const_ready[idx] = true;
                if (!val_ge(consts[idx], lvl)) return out;  // off support
                if (!consts[idx].is_zero()) s = std::min(s, consts[idx].val());
                W = std::max(W, lvl - s + 2);
                continue;
            }
            row_keep[idx] = true;
            if (cb < kInf) s = std::min(s, cb);
            W = std::max(W, lvl - s + 2);
        }

    if (W > Padic::max_digits(p) - 1)
        throw precision_error("whittaker congruence window exceeds capacity");

    // pass 2: exact rows, elimination
    Padic coefP[16][7];
    uint64_t pW = detail::pow_u64(p, static_cast<unsigned>(W));
    el_.reset(p, W, ncols);
    Padic ppow_cache = Padic::from_int(p, p);
    uint64_t rowbuf[7];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int idx = 4 * i + j;
            int lvl = L[i][j];
            if (!const_ready[idx]) {
                consts[idx] = exact_const(i, j);
                const_ready[idx] = true;
            }
            for (int e = 0; e < ncols; ++e) {
                if (coefv[idx][e] >= kInf) {
                    coefP[idx][e] = Padic::zero(p);
                    continue;
                }
                Padic c;
                if (e < 6) {
                    c = kd.B(i, kPairs[e].l) * g(kPairs[e].lp, j);
                    if (floors[e] != 0) c = c * ppow_cache.pow(floors[e]);
                } else {
                    c = kd.B(i, 2) * (j == 1 ? xc->c21 : xc->c23);
                }
                coefP[idx][e] = c;
            }
            if (!row_keep[idx]) continue;
            int s = 0;
            for (int e = 0; e < ncols; ++e) {
                const Padic& c = coefP[idx][e];
                if (!(c.is_zero() && c.zero_is_exact())) {
                    int v = pval(c);
                    if (v < kInf) s = std::min(s, v);
                }
            }
            if (!consts[idx].is_zero()) s = std::min(s, consts[idx].val());
            int mod = lvl - s;
            if (mod <= 0) continue;
            if (W - mod < 0) throw precision_error("row window overflow");
            uint64_t lift = detail::pow_u64(p, static_cast<unsigned>(W - mod));
            for (int e = 0; e < ncols; ++e)
                rowbuf[e] = coefP[idx][e].shifted_residue(-s, mod) * lift;
            uint64_t c0 = consts[idx].shifted_residue(-s, mod);
            uint64_t pm = detail::pow_u64(p, static_cast<unsigned>(mod));
            el_.add_row(rowbuf, (pm - c0) % pm * lift);
        }
    if (!el_.eliminate()) return out;

    tsol_.assign(static_cast<size_t>(ncols), 0);
    el_.particular(tsol_.data());
    auto m_entry = [&](int idx, const uint64_t* t) {
        Padic m = consts[idx];
        for (int e = 0; e < ncols; ++e) {
            const Padic& c = coefP[idx][e];
            if ((c.is_zero() && c.zero_is_exact()) || t[e] == 0) continue;
            m = m + c * Padic::from_unit(p, t[e], 0, W);
        }
        return m;
    };
    uint8_t base_digits[16];
    for (int idx = 0; idx < 16; ++idx)
        base_digits[idx] =
            static_cast<uint8_t>(m_entry(idx, tsol_.data()).shifted_residue(L[idx / 4][idx % 4], 1));

    gen_img_.clear();
    gen_t_.clear();
    el_.for_each_kernel_generator([&](const uint64_t* gvec) {
        std::array<int8_t, 16> img{};
        bool nzero = false;
        for (int idx = 0; idx < 16; ++idx) {
            Padic dm = Padic::zero(p);
            for (int e = 0; e < ncols; ++e) {
                const Padic& c = coefP[idx][e];
                if ((c.is_zero() && c.zero_is_exact()) || gvec[e] == 0) continue;
                dm = dm + c * Padic::from_unit(p, gvec[e], 0, W);
            }
            uint8_t digit = static_cast<uint8_t>(dm.shifted_residue(L[idx / 4][idx % 4], 1));
            img[idx] = static_cast<int8_t>(digit);
            if (digit) nzero = true;
        }
        if (!nzero) return;
        gen_img_.push_back(img);
        gen_t_.emplace_back(gvec, gvec + ncols);
    });

    // echelonize the residue variation space over F_p, carrying t-vectors
    size_t nrows = gen_img_.size();
    std::vector<int> pivot_col(nrows, -1);
    size_t rank = 0;
    for (int col = 0; col < 16 && rank < nrows; ++col) {
        size_t sel = nrows;
        for (size_t r = rank; r < nrows; ++r)
            if (gen_img_[r][col] % p != 0) {
                sel = r;
                break;
            }
        if (sel == nrows) continue;
        std::swap(gen_img_[rank], gen_img_[sel]);
        std::swap(gen_t_[rank], gen_t_[sel]);
        uint32_t piv = static_cast<uint32_t>(gen_img_[rank][col]) % p;
        uint32_t pivinv = 1;
        for (uint32_t t = 1; t < p; ++t)
            if (t * piv % p == 1) pivinv = t;
        for (int cc = 0; cc < 16; ++cc)
            gen_img_[rank][cc] = static_cast<int8_t>(gen_img_[rank][cc] * pivinv % p);
        for (auto& tv : gen_t_[rank]) tv = detail::mul_mod(tv, pivinv, pW);
        for (size_t r = 0; r < nrows; ++r) {
            if (r == rank) continue;
            uint32_t f = static_cast<uint32_t>(gen_img_[r][col]) % p;
            if (!f) continue;
            for (int cc = 0; cc < 16; ++cc)
                gen_img_[r][cc] =
                    static_cast<int8_t>((gen_img_[r][cc] + (p - f) * gen_img_[rank][cc]) % p);
            for (int e = 0; e < ncols; ++e)
                gen_t_[r][e] = (gen_t_[r][e] + (pW - detail::mul_mod(f, gen_t_[rank][e], pW))) % pW;
        }
        pivot_col[rank] = col;
        ++rank;
    }

    const auto& tuples = C_.residue_tuples();
    uint64_t delta_t[7];
    uint8_t target[16];
    for (uint32_t xi = 1; xi < C_.kE()->q(); ++xi) {
        const auto& tt = tuples[xi];
        for (int idx = 0; idx < 16; ++idx)
            target[idx] = static_cast<uint8_t>((tt[idx] + p - base_digits[idx] % p) % p);
        for (int e = 0; e < ncols; ++e) delta_t[e] = 0;
        for (size_t r = 0; r < rank; ++r) {
            int col = pivot_col[r];
            uint32_t f = target[col] % p;
            if (!f) continue;
            for (int cc = 0; cc < 16; ++cc)
                target[cc] = static_cast<uint8_t>(
                    (target[cc] + (p - f) * static_cast<uint8_t>(gen_img_[r][cc])) % p);
            for (int e = 0; e < ncols; ++e)
                delta_t[e] = (delta_t[e] + detail::mul_mod(f, gen_t_[r][e], pW)) % pW;
        }
        bool ok = true;
        for (int idx = 0; idx < 16; ++idx)
            if (target[idx] % p) {
                ok = false;
                break;
            }
        if (!ok) continue;

        if (xc) {  // prefilter: some x in the window can reach the support
            out.nonzero = true;
            out.k = k;
            out.xi = xi;
            return out;
        }

        uint64_t tfin[7];
        for (int e = 0; e < ncols; ++e) tfin[e] = (tsol_[e] + delta_t[e]) % pW;
        // psi_4(u), u = n^{-1}: argument -(n_12 + n_23 + n_34)
        Padic arg = Padic::zero(p);
        static constexpr int super[3] = {0, 3, 5};
        for (int si = 0; si < 3; ++si) {
            int e = super[si];
            if (tfin[e] == 0) continue;
            Padic n_e = Padic::from_unit(p, tfin[e], 0, W);
            if (floors[e] != 0) n_e = n_e * ppow_cache.pow(floors[e]);
            arg = arg - n_e;
        }
        RootOfUnity psi4 = psi_F_root(arg);
        // psi_beta(z) = psi_F(tr(beta T(xi)^{-1} m))
        const Mat4& BT = C_.beta_teich_inv(xi);
        Padic tr = Padic::zero(p);
        for (int i = 0; i < 4; ++i)
            for (int l = 0; l < 4; ++l) {
                const Padic& b = BT(i, l);
                if (b.is_zero() && b.zero_is_exact()) continue;
                tr = tr + b * m_entry(4 * l + i, tfin);
            }
        WhittakerParts w;
        w.nonzero = true;
        w.k = k;
        w.xi = xi;
        w.psi = psi4 * psi_F_root(tr);
        if (all) {
            all->push_back(w);
            continue;
        }
        return w;
    }
    if (all && !all->empty()) return (*all)[0];
    return out;
}

Cyc WhittakerEvaluator::value(const Mat4& g) {
    WhittakerParts w = eval(g);
    if (!w.nonzero) return Cyc::zero();
    return Cyc::root(w.value_root(C_));
}

Cyc whittaker_value(const FamilyContext& ctx, const Mat4& g) {
    WhittakerEvaluator ev(ctx);
    return ev.value(g);
}

Cyc bessel_value(const FamilyContext& ctx, const Mat4& j) {
    auto dec = ctx.bold_j_decompose(j);
    if (!dec) throw domain_error("bessel_value: element is not in bold-J");
    return ctx.lambda_eval(*dec);
}

}  // namespace shalika
