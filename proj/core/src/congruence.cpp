#include "shalika/congruence.hpp"

#include <algorithm>
#include <set>

namespace shalika {

int ZpnEliminator::valp(uint64_t x) const {
    if (x == 0) return W_;
    int v = 0;
    while (x % p_ == 0) {
        x /= p_;
        ++v;
    }
    return v;
}

void ZpnEliminator::reset(uint32_t p, int W, int ncols) {
    p_ = p;
    W_ = W;
    if (W > Padic::max_digits(p)) throw precision_error("congruence window exceeds mantissa capacity");
    pW_ = detail::pow_u64(p, static_cast<unsigned>(W));
    ncols_ = ncols;
    nrows_ = 0;
    m_.clear();
    pivot_row_of_.assign(ncols, -1);
    pivot_val_of_.assign(ncols, W_);
    pivot_order_.clear();
    row_active_.clear();
}

void ZpnEliminator::add_row(const uint64_t* coeffs, uint64_t rhs) {
    for (int j = 0; j < ncols_; ++j) m_.push_back(coeffs[j] % pW_);
    m_.push_back(rhs % pW_);
    row_active_.push_back(1);
    ++nrows_;
}

bool ZpnEliminator::eliminate() {
    const int stride = ncols_ + 1;
    while (true) {
        int br = -1, bc = -1, bv = W_;
        for (int r = 0; r < nrows_; ++r) {
            if (!row_active_[r]) continue;
            const uint64_t* row = &m_[r * stride];
            for (int c = 0; c < ncols_; ++c) {
                if (row[c] == 0) continue;
                int v = valp(row[c]);
                if (v < bv) {
                    bv = v;
                    br = r;
                    bc = c;
                    if (v == 0) goto found;
                }
            }
        }
    found:
        if (br < 0) break;
        uint64_t piv = m_[br * stride + bc];
        uint64_t upiv = piv / detail::pow_u64(p_, static_cast<unsigned>(bv));
        uint64_t upiv_inv = detail::inv_mod_pk(upiv, pW_);
        for (int r = 0; r < nrows_; ++r) {
            if (r == br || !row_active_[r]) continue;
            uint64_t* row = &m_[r * stride];
            uint64_t a = row[bc];
            if (a == 0) continue;
            // q = (a / p^bv) * upiv^{-1}; exact because bv is minimal
            uint64_t q = detail::mul_mod(a / detail::pow_u64(p_, static_cast<unsigned>(bv)), upiv_inv, pW_);
            const uint64_t* prow = &m_[br * stride];
            for (int j = 0; j <= ncols_; ++j) {
                uint64_t sub = detail::mul_mod(q, prow[j], pW_);
                row[j] = (row[j] + pW_ - sub) % pW_;
            }
        }
        // pivot-row feasibility: rhs must be at least as divisible as the pivot
        if (valp(m_[br * stride + ncols_]) < bv) return false;
        pivot_row_of_[bc] = br;
        pivot_val_of_[bc] = bv;
        pivot_order_.push_back(bc);
        row_active_[br] = 0;
    }
    // rows with no coefficients left must have vanishing rhs
    for (int r = 0; r < nrows_; ++r) {
        if (!row_active_[r]) continue;
        if (m_[r * stride + ncols_] % pW_ != 0) return false;
    }
    return true;
}

void ZpnEliminator::backsolve(int preset_col, uint64_t preset_val, uint64_t* out) const {
    const int stride = ncols_ + 1;
    for (int j = 0; j < ncols_; ++j) out[j] = 0;
    bool homogeneous = preset_col >= 0;
    if (preset_col >= 0) out[preset_col] = preset_val % pW_;
    for (auto it = pivot_order_.rbegin(); it != pivot_order_.rend(); ++it) {
        int c = *it;
        if (c == preset_col) continue;  // its row is consistent by construction
        int r = pivot_row_of_[c];
        const uint64_t* row = &m_[r * stride];
        uint64_t rhs = homogeneous ? 0 : row[ncols_];
        uint64_t acc = 0;
        for (int j = 0; j < ncols_; ++j) {
            if (j == c || row[j] == 0) continue;
            acc = (acc + detail::mul_mod(row[j], out[j], pW_)) % pW_;
        }
        uint64_t residual = (rhs + pW_ - acc) % pW_;
        int v = pivot_val_of_[c];
        uint64_t pv = detail::pow_u64(p_, static_cast<unsigned>(v));
        // residual divisible by p^v (guaranteed by minimal-valuation pivoting)
        uint64_t red = residual / pv;
        uint64_t upiv = row[c] / pv;
        out[c] = detail::mul_mod(red, detail::inv_mod_pk(upiv, pW_), pW_ / pv);
    }
}

void ZpnEliminator::particular(uint64_t* out) const { backsolve(-1, 0, out); }

void ZpnEliminator::for_each_kernel_generator(const std::function<void(const uint64_t*)>& fn) const {
    std::vector<uint64_t> g(ncols_);
    for (int c = 0; c < ncols_; ++c) {
        if (pivot_row_of_[c] < 0) {
            backsolve(c, 1, g.data());
            fn(g.data());
        } else if (pivot_val_of_[c] > 0) {
            backsolve(c, detail::pow_u64(p_, static_cast<unsigned>(W_ - pivot_val_of_[c])), g.data());
            fn(g.data());
        }
    }
}

int ZpnEliminator::pivot_valuation(int col) const {
    return pivot_row_of_[col] < 0 ? W_ : pivot_val_of_[col];
}

bool SolutionSet::satisfies(const CongruenceSystem& sys, const std::vector<uint64_t>& x) const {
    for (const auto& row : sys.rows) {
        Padic acc = row.constant;
        for (int i = 0; i < sys.unknowns; ++i)
            acc = acc + row.coeffs[i] * Padic::from_int(sys.p, static_cast<long long>(x[i]));
        if (!val_ge(acc, row.level)) return false;
    }
    return true;
}

std::vector<std::vector<uint64_t>> SolutionSet::enumerate(int mod_exp) const {
    uint64_t pm = detail::pow_u64(p, static_cast<unsigned>(mod_exp));
    std::set<std::vector<uint64_t>> out;
    std::vector<std::vector<uint64_t>> frontier;
    std::vector<uint64_t> base(particular.size());
    for (size_t i = 0; i < base.size(); ++i) base[i] = particular[i] % pm;
    out.insert(base);
    frontier.push_back(base);
    while (!frontier.empty()) {
        std::vector<std::vector<uint64_t>> next;
        for (const auto& x : frontier) {
            for (const auto& g : generators) {
                std::vector<uint64_t> y(x.size());
                for (size_t i = 0; i < x.size(); ++i) y[i] = (x[i] + g[i]) % pm;
                if (out.insert(y).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return {out.begin(), out.end()};
}

std::optional<SolutionSet> solve_congruences(const CongruenceSystem& sys) {
    // scale every row to an integral congruence, then lift to a common window
    struct Row {
        std::vector<uint64_t> a;
        uint64_t rhs;
        int mod;
    };
    std::vector<Row> rows;
    int W = 1;
    for (const auto& cg : sys.rows) {
        int s = 0;
        auto see = [&](const Padic& x) {
            if (!x.is_zero()) s = std::min(s, static_cast<int>(x.val()));
        };
        for (const auto& c : cg.coeffs) see(c);
        see(cg.constant);
        int mod = cg.level - s;
        if (mod <= 0) continue;  // trivially satisfied
        Row r;
        r.mod = mod;
        r.a.resize(sys.unknowns);
        for (int i = 0; i < sys.unknowns; ++i) r.a[i] = cg.coeffs[i].shifted_residue(-s, mod);
        uint64_t c0 = cg.constant.shifted_residue(-s, mod);
        uint64_t pm = detail::pow_u64(sys.p, static_cast<unsigned>(mod));
        r.rhs = (pm - c0) % pm;
        W = std::max(W, mod);
        rows.push_back(std::move(r));
    }
    ZpnEliminator el;
    el.reset(sys.p, W, sys.unknowns);
    for (auto& r : rows) {
        uint64_t lift = detail::pow_u64(sys.p, static_cast<unsigned>(W - r.mod));
        std::vector<uint64_t> a(sys.unknowns);
        for (int i = 0; i < sys.unknowns; ++i) a[i] = r.a[i] * lift;
        el.add_row(a.data(), r.rhs * lift);
    }
    if (!el.eliminate()) return std::nullopt;
    SolutionSet out;
    out.p = sys.p;
    out.unknowns = sys.unknowns;
    out.modulus_exp = W;
    out.particular.resize(sys.unknowns);
    el.particular(out.particular.data());
    el.for_each_kernel_generator([&](const uint64_t* g) {
        out.generators.emplace_back(g, g + sys.unknowns);
    });
    out.free_exp.resize(sys.unknowns);
    for (int c = 0; c < sys.unknowns; ++c) out.free_exp[c] = el.pivot_valuation(c);
    return out;
}

}  // namespace shalika
