#include "shalika/integral.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace shalika {

int default_jobs() {
    if (const char* env = std::getenv("SHALIKA_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

int IntegralConfig::effective_level(const FamilySpec& spec) const {
    if (level > 0) return level;
    return spec.p == 2 ? 3 : 2;
}

Window IntegralConfig::effective_r_window(const FamilySpec& spec) const {
    if (r_window_set) return r_window;
    if (spec.kind == FamilyKind::Simple) return Window{-4, 4};
    return Window{-4, 1};
}

uint64_t GeometryTable::pack(int r, uint32_t xi, uint32_t psi_cexp, uint32_t psi_e, uint32_t dh) {
    uint64_t key = static_cast<uint64_t>(r + 64);   // 7 bits
    key = (key << 10) | (xi & 0x3ff);
    key = (key << 4) | (psi_cexp & 0xf);
    key = (key << 16) | (psi_e & 0xffff);
    key = (key << 4) | (dh & 0xf);
    return key;
}

void GeometryTable::unpack(uint64_t key, int& r, uint32_t& xi, uint32_t& psi_cexp, uint32_t& psi_e,
                           uint32_t& dh) {
    dh = static_cast<uint32_t>(key & 0xf);
    key >>= 4;
    psi_e = static_cast<uint32_t>(key & 0xffff);
    key >>= 16;
    psi_cexp = static_cast<uint32_t>(key & 0xf);
    key >>= 4;
    xi = static_cast<uint32_t>(key & 0x3ff);
    key >>= 10;
    r = static_cast<int>(key) - 64;
}

namespace {

uint32_t log_p(uint32_t p, uint32_t m) {
    uint32_t c = 0;
    while (m > 1) {
        m /= p;
        ++c;
    }
    return c;
}

// shared enumeration driver: for each point with W != 0, call sink
template <typename Sink>
void enumerate_r_fiber(const FamilyContext& ctx, int r, int level, int x_lo, int jobs,
                       Sink&& sink, std::atomic<bool>* stop) {
    uint32_t p = ctx.p();
    auto kopt = ctx.k_from_r(r);
    if (!kopt) return;
    // warm the shared pi-power caches before the threads fan out
    ctx.pi_pow(*kopt);
    ctx.pi_pow_inv(*kopt);
    Gl2Enumerator en(p, level);
    const uint64_t raw = en.raw_size();
    const uint64_t x_count = detail::pow_u64(p, static_cast<unsigned>(level - x_lo));
    const int prec = ctx.prec();
    Padic pi_xlo = Padic::from_int(p, p, prec).pow(x_lo);

    std::atomic<uint64_t> next_chunk{0};
    const uint64_t chunk = std::max<uint64_t>(512, raw / (static_cast<uint64_t>(jobs) * 64 + 1));
    auto worker = [&]() {
        WhittakerEvaluator ev(ctx);
        Gl2Enumerator::Entry e;
        while (true) {
            if (stop && stop->load(std::memory_order_relaxed)) return;
            uint64_t lo = next_chunk.fetch_add(chunk);
            if (lo >= raw) return;
            uint64_t hi = std::min(raw, lo + chunk);
            for (uint64_t idx = lo; idx < hi; ++idx) {
                if (!en.decode(idx, e)) continue;
                Mat2 h = en.lift(e, prec);
                uint32_t dh = static_cast<uint32_t>(
                    ((e.a % p) * (e.d % p) + p * p - (e.b % p) * (e.c % p)) % p);
                Mat4 g0 = shalika_embed(r, h, Padic::zero(p));
                FreeXColumn xcol;
                Padic wr_xlo = Padic::from_int(p, p, prec).pow(r) * pi_xlo;
                xcol.c21 = h(0, 0) * wr_xlo;
                xcol.c23 = h(0, 1) * wr_xlo;
                if (!ev.fiber_feasible(g0, 2 * r, xcol)) continue;
                for (uint64_t t = 0; t < x_count; ++t) {
                    if (stop && stop->load(std::memory_order_relaxed)) return;
                    Padic x = t == 0 ? Padic::zero(p)
                                     : Padic::from_int(p, static_cast<long long>(t), prec) * pi_xlo;
                    Mat4 g = t == 0 ? g0 : shalika_embed(r, h, x);
                    WhittakerParts w = ev.eval_at(g, 2 * r);
                    if (!w.nonzero) continue;
                    sink(r, w, dh);
                }
            }
        }
    };
    if (jobs <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(jobs));
    for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
}

}  // namespace

GeometryTable lambda0_geometry(const FamilyContext& ctx, int level, Window r_window, int x_lo,
                               int jobs) {
    if (level < 2) throw domain_error("lambda0 needs level >= 2");
    if (jobs <= 0) jobs = default_jobs();
    uint32_t p = ctx.p();
    GeometryTable gt;
    gt.level = level;
    gt.r_window = r_window;
    gt.x_lo = x_lo;
    gt.h_group_size = Gl2Enumerator(p, level).group_size();

    std::unordered_map<uint64_t, long long> cells;
    std::mutex mu;
    for (int r = r_window.lo; r <= r_window.hi; ++r) {
        std::unordered_map<uint64_t, long long> local_total;
        std::mutex local_mu;
        enumerate_r_fiber(
            ctx, r, level, x_lo, jobs,
            [&](int rr, const WhittakerParts& w, uint32_t dh) {
                uint32_t cexp = log_p(p, w.psi.m);
                uint64_t key = GeometryTable::pack(rr, w.xi, cexp, w.psi.e, dh);
                std::lock_guard<std::mutex> lk(local_mu);
                ++local_total[key];
            },
            nullptr);
        std::lock_guard<std::mutex> lk(mu);
        for (auto& kv : local_total) cells[kv.first] += kv.second;
    }
    gt.cells.assign(cells.begin(), cells.end());
    std::sort(gt.cells.begin(), gt.cells.end());
    return gt;
}

const GeometryTable& GeometryCache::get(const FamilyContext& ctx, int level, Window r_window,
                                        int x_lo, int jobs) {
    std::ostringstream key;
    const FamilySpec& s = ctx.spec();
    key << s.p << "/" << s.kind_name() << "/";
    switch (s.kind) {
        case FamilyKind::Simple: key << s.v; break;
        case FamilyKind::Middle: key << s.c << "," << s.d; break;
        case FamilyKind::Biquadratic: key << s.a << "," << s.b; break;
    }
    key << "/M" << level << "/r" << r_window.lo << ":" << r_window.hi << "/x" << x_lo;
    auto it = tables_.find(key.str());
    if (it != tables_.end()) return it->second;
    GeometryTable gt = lambda0_geometry(ctx, level, r_window, x_lo, jobs);
    return tables_.emplace(key.str(), std::move(gt)).first->second;
}

std::map<int, Cyc> assemble_t_parts(const FamilyContext& ctx, const GeometryTable& gt, int sign,
                                    const Rat& weight_scale) {
    uint32_t p = ctx.p();
    const FamilySpec& spec = ctx.spec();
    Rat base = weight_scale / (Rat(gt.h_group_size) *
                               Rat(detail::pow_u64(p, static_cast<unsigned>(gt.level))));
    std::map<int, Cyc> parts;
    for (auto& [key, count] : gt.cells) {
        int r;
        uint32_t xi, cexp, pe, dh;
        GeometryTable::unpack(key, r, xi, cexp, pe, dh);
        auto kopt = ctx.k_from_r(r);
        int k = *kopt;
        Rat w = base * Rat(count);
        if (r >= 0)
            w *= Rat(detail::pow_u64(p, static_cast<unsigned>(r)));
        else
            w /= Rat(detail::pow_u64(p, static_cast<unsigned>(-r)));
        if (sign == -1 && (r % 2)) w = -w;
        auto ch = ctx.lambda_charge(k, xi);
        RootOfUnity root = spec.zeta.pow(ch.zeta_pow);
        root = root * ctx.character().value_root(ch.chi_arg);
        root = root * RootOfUnity::make(static_cast<uint32_t>(detail::pow_u64(p, cexp)), pe);
        if (spec.twist) {
            // eta(det alpha) = (eta(pi)^r eta_mu(det h))^2
            RootOfUnity tw = spec.twist->at_pi.pow(r);
            if (dh != 1 && !spec.twist->mu.is_trivial())
                tw = tw * spec.twist->mu.value_root(dh);
            root = root * tw * tw;
        }
        auto it = parts.find(k);
        if (it == parts.end()) it = parts.emplace(k, Cyc::zero()).first;
        it->second.add_monomial(w, root.m, root.e);
    }
    return parts;
}

namespace {
IntegralReport assemble_report(const FamilyContext& ctx, const GeometryTable& gt, int sign) {
    IntegralReport rep;
    rep.family = ctx.spec();
    rep.level = gt.level;
    rep.r_window = gt.r_window;
    rep.x_lo = gt.x_lo;
    rep.sign_s0 = sign;
    rep.t_parts = assemble_t_parts(ctx, gt, sign);
    rep.total = Cyc::zero();
    for (auto& [k, tk] : rep.t_parts) rep.total += tk;
    rep.nonzero = !rep.total.is_zero();
    return rep;
}

bool t_parts_equal(const std::map<int, Cyc>& a, const std::map<int, Cyc>& b) {
    for (auto& [k, tk] : a) {
        auto it = b.find(k);
        if (it == b.end()) {
            if (!tk.is_zero()) return false;
        } else if (!(tk == it->second)) {
            return false;
        }
    }
    for (auto& [k, tk] : b)
        if (a.find(k) == a.end() && !tk.is_zero()) return false;
    return true;
}
}  // namespace

IntegralReport lambda_s0_sign(const FamilyContext& ctx, int sign, const IntegralConfig& cfg,
                              GeometryCache* cache) {
    GeometryCache local;
    GeometryCache& gc = cache ? *cache : local;
    int level = cfg.effective_level(ctx.spec());
    Window rw = cfg.effective_r_window(ctx.spec());
    int jobs = cfg.jobs > 0 ? cfg.jobs : default_jobs();
    for (int attempt = 0;; ++attempt) {
        const GeometryTable& g0 = gc.get(ctx, level, rw, cfg.x_lo, jobs);
        const GeometryTable& g1 = gc.get(ctx, level + 1, rw, cfg.x_lo, jobs);
        IntegralReport rep = assemble_report(ctx, g0, sign);
        IntegralReport rep1 = assemble_report(ctx, g1, sign);
        rep.stable = t_parts_equal(rep.t_parts, rep1.t_parts);
        if (rep.stable || attempt >= cfg.escalation_budget) return rep;
        ++level;
    }
}

IntegralReport lambda0(const FamilyContext& ctx, const IntegralConfig& cfg, GeometryCache* cache) {
    return lambda_s0_sign(ctx, +1, cfg, cache);
}

bool stability_check(const FamilyContext& ctx, const IntegralConfig& cfg, GeometryCache* cache) {
    GeometryCache local;
    GeometryCache& gc = cache ? *cache : local;
    int level = cfg.effective_level(ctx.spec());
    Window rw = cfg.effective_r_window(ctx.spec());
    int jobs = cfg.jobs > 0 ? cfg.jobs : default_jobs();
    const GeometryTable& g0 = gc.get(ctx, level, rw, cfg.x_lo, jobs);
    const GeometryTable& g1 = gc.get(ctx, level + 1, rw, cfg.x_lo, jobs);
    return t_parts_equal(assemble_t_parts(ctx, g0, +1), assemble_t_parts(ctx, g1, +1));
}

std::set<int> support_scan(const FamilyContext& ctx, Window k_window, int level, int jobs) {
    if (jobs <= 0) jobs = default_jobs();
    std::set<int> found;
    for (int k = k_window.lo; k <= k_window.hi; ++k) {
        // torus exponent reaching this k: v(det) = 2r = k * v(det pi)
        long long num = static_cast<long long>(k) * ctx.pi_det_val();
        if (num % 2) continue;
        int r = static_cast<int>(num / 2);
        std::atomic<bool> stop{false};
        std::atomic<bool> hit{false};
        enumerate_r_fiber(
            ctx, r, level, -2, jobs,
            [&](int, const WhittakerParts& w, uint32_t) {
                if (w.nonzero) {
                    hit.store(true);
                    stop.store(true, std::memory_order_relaxed);
                }
            },
            &stop);
        if (hit.load()) found.insert(k);
    }
    return found;
}

}  // namespace shalika
