#include "shalika/report.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"

namespace shalika {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json cyc_json(const Cyc& c) {
    Cyc can = c.canonical();
    ordered_json j;
    j["m"] = can.conductor();
    ordered_json coeffs = ordered_json::array();
    for (const auto& r : can.coeffs()) {
        std::ostringstream os;
        os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
        coeffs.push_back(os.str());
    }
    j["coeffs"] = coeffs;
    j["approx"] = ordered_json::array({can.approx_real(), can.approx_imag()});
    return j;
}

ordered_json root_json(const RootOfUnity& z) {
    return ordered_json{{"m", z.m}, {"e", z.e}};
}

RootOfUnity root_from_json(const ordered_json& j) {
    return RootOfUnity::make(j.at("m").get<uint32_t>(), j.at("e").get<long long>());
}

ordered_json family_json(const FamilySpec& f) {
    ordered_json j;
    j["p"] = f.p;
    j["variant"] = f.kind_name();
    switch (f.kind) {
        case FamilyKind::Simple: j["v"] = f.v; break;
        case FamilyKind::Middle:
            j["c"] = f.c;
            j["d"] = f.d;
            break;
        case FamilyKind::Biquadratic:
            j["a"] = f.a;
            j["b"] = f.b;
            break;
    }
    j["char_exp"] = f.char_exp;
    j["zeta"] = root_json(f.zeta);
    if (f.twist) {
        j["twist"] = ordered_json{{"mu_exp", f.twist->mu.t}, {"at_pi", root_json(f.twist->at_pi)}};
    }
    return j;
}

FamilySpec family_from_json(const ordered_json& j) {
    uint32_t p = j.at("p").get<uint32_t>();
    std::string variant = j.at("variant").get<std::string>();
    RootOfUnity zeta = j.contains("zeta") ? root_from_json(j.at("zeta")) : RootOfUnity{1, 0};
    uint32_t ce = j.value("char_exp", 0u);
    FamilySpec f;
    if (variant == "simple")
        f = FamilySpec::simple(p, j.value("v", 1u), ce, zeta);
    else if (variant == "middle")
        f = FamilySpec::middle(p, j.value("c", 1ll), j.value("d", 1ll), ce, zeta);
    else if (variant == "biquadratic")
        f = FamilySpec::biquadratic(p, j.value("a", 1ll), j.value("b", 1ll), ce, zeta);
    else
        throw domain_error("unknown family variant '" + variant + "'");
    if (j.contains("twist") && !j.at("twist").is_null()) {
        TameChar eta = TameChar::trivial(p);
        eta.mu.t = j.at("twist").value("mu_exp", 0u) % (p - 1 ? p - 1 : 1);
        if (j.at("twist").contains("at_pi")) eta.at_pi = root_from_json(j.at("twist").at("at_pi"));
        f.twist = eta;
    }
    return f;
}

ordered_json report_json(const IntegralReport& rep) {
    ordered_json j;
    j["level"] = rep.level;
    j["r_window"] = ordered_json::array({rep.r_window.lo, rep.r_window.hi});
    j["x_lo"] = rep.x_lo;
    j["sign_s0"] = rep.sign_s0;
    ordered_json parts = ordered_json::array();
    for (auto& [k, tk] : rep.t_parts)
        parts.push_back(ordered_json{{"k", k}, {"value", cyc_json(tk)}});
    j["t_parts"] = parts;
    j["total"] = cyc_json(rep.total);
    j["stable"] = rep.stable;
    j["nonzero"] = rep.nonzero;
    return j;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["central_trivial"] = v.central_trivial;
    j["lambda0_nonzero"] = v.lambda0_nonzero;
    if (v.family.kind == FamilyKind::Simple) j["simple_zeta_criterion"] = v.simple_zeta_criterion;
    j["transfer"] = v.transfer;
    j["criterion_match"] = v.criterion_match;
    j["integral"] = report_json(v.report);
    return j;
}

IntegralConfig integral_from_json(const ordered_json& j) {
    IntegralConfig cfg;
    if (j.contains("level")) cfg.level = j.at("level").get<int>();
    if (j.contains("r_window")) {
        cfg.r_window = Window{j.at("r_window").at(0).get<int>(), j.at("r_window").at(1).get<int>()};
        cfg.r_window_set = true;
    }
    if (j.contains("x_lo")) cfg.x_lo = j.at("x_lo").get<int>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    return cfg;
}

}  // namespace

std::string cyc_to_json_text(const Cyc& c) { return cyc_json(c).dump(); }

RunConfig RunConfig::from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    if (j.contains("schema")) {
        cfg.schema = j.at("schema").get<std::string>();
        if (cfg.schema != "shalika-verifier/1")
            throw domain_error("unsupported schema '" + cfg.schema + "'");
    }
    cfg.command = j.value("command", std::string("verdict"));
    if (!j.contains("family")) throw domain_error("config needs a 'family' object");
    cfg.family = family_from_json(j.at("family"));
    cfg.integral = integral_from_json(j);
    if (j.contains("k_window")) {
        cfg.k_window = Window{j.at("k_window").at(0).get<int>(), j.at("k_window").at(1).get<int>()};
        cfg.k_window_set = true;
    }
    if (j.contains("precision")) cfg.precision = j.at("precision").get<int>();
    if (j.contains("identity_draws")) cfg.identity_draws = j.at("identity_draws").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("char_exps"))
            cfg.grid_char_exps = g.at("char_exps").get<std::vector<uint32_t>>();
        if (g.contains("zeta_exps"))
            cfg.grid_zeta_exps = g.at("zeta_exps").get<std::vector<long long>>();
        if (g.contains("zeta_conductor"))
            cfg.grid_zeta_conductor = g.at("zeta_conductor").get<uint32_t>();
    }
    return cfg;
}

std::string RunConfig::to_json_text(int indent) const {
    ordered_json j;
    j["schema"] = schema;
    j["command"] = command;
    j["family"] = family_json(family);
    if (integral.level > 0) j["level"] = integral.level;
    if (integral.r_window_set)
        j["r_window"] = ordered_json::array({integral.r_window.lo, integral.r_window.hi});
    j["x_lo"] = integral.x_lo;
    if (integral.jobs > 0) j["jobs"] = integral.jobs;
    if (k_window_set) j["k_window"] = ordered_json::array({k_window.lo, k_window.hi});
    if (precision > 0) j["precision"] = precision;
    j["identity_draws"] = identity_draws;
    j["seed"] = seed;
    if (!grid_char_exps.empty() || !grid_zeta_exps.empty()) {
        ordered_json g;
        if (!grid_char_exps.empty()) g["char_exps"] = grid_char_exps;
        if (!grid_zeta_exps.empty()) g["zeta_exps"] = grid_zeta_exps;
        if (grid_zeta_conductor) g["zeta_conductor"] = grid_zeta_conductor;
        j["grid"] = g;
    }
    return j.dump(indent);
}

namespace {

ordered_json run_one_command(const RunConfig& cfg, const FamilySpec& fam, GeometryCache& cache,
                             bool& mismatch) {
    ordered_json out;
    out["family"] = family_json(fam);
    if (cfg.command == "verdict") {
        Verdict v = verdict(fam, cfg.integral, &cache);
        out["verdict"] = verdict_json(v);
        if (!v.criterion_match) mismatch = true;
    } else if (cfg.command == "scan") {
        FamilyContext ctx(fam, cfg.precision);
        int level = cfg.integral.effective_level(fam);
        auto ks = support_scan(ctx, cfg.k_window, level, cfg.integral.jobs);
        out["support"] = std::vector<int>(ks.begin(), ks.end());
        out["k_window"] = ordered_json::array({cfg.k_window.lo, cfg.k_window.hi});
        out["level"] = level;
    } else if (cfg.command == "lambda0") {
        FamilyContext ctx(fam, cfg.precision);
        out["integral"] = report_json(lambda0(ctx, cfg.integral, &cache));
    } else if (cfg.command == "lfactor") {
        LFactor lf = l_factor(fam, cfg.integral, &cache);
        out["signs"] = lf.signs;
        out["l_factor"] = lf.factor_string(fam.p);
    } else if (cfg.command == "central-char") {
        CentralCharacter w = central_character(fam);
        out["mu_exp"] = w.mu.t;
        out["at_pi"] = cyc_json(w.at_pi);
        out["trivial"] = w.is_trivial();
    } else if (cfg.command == "verify-identities") {
        FamilyContext ctx(fam, cfg.precision);
        std::mt19937_64 rng(cfg.seed);
        ordered_json tally;
        std::vector<ProofCase> cases;
        if (fam.kind == FamilyKind::Middle)
            cases = {ProofCase::T0, ProofCase::T1};
        else if (fam.kind == FamilyKind::Biquadratic)
            cases = {ProofCase::T0, ProofCase::T1, ProofCase::T2};
        else
            throw domain_error("verify-identities covers middle and biquadratic families");
        const char* names[] = {"T0", "T1", "T2"};
        bool all_ok = true;
        for (auto pc : cases) {
            int ok = 0;
            for (int i = 0; i < cfg.identity_draws; ++i) {
                ProofParams pr = draw_proof_params(ctx, pc, rng);
                if (verify_proof_decomposition(ctx, pc, pr)) ++ok;
            }
            tally[names[static_cast<int>(pc)]] =
                ordered_json{{"draws", cfg.identity_draws}, {"holds", ok}};
            if (ok != cfg.identity_draws) all_ok = false;
        }
        out["identities"] = tally;
        out["all_hold"] = all_ok;
        if (!all_ok) mismatch = true;
    } else {
        throw domain_error("unknown command '" + cfg.command + "'");
    }
    return out;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
    RunOutcome outcome;
    ordered_json j;
    j["schema"] = "shalika-verifier/1";
    auto t0 = std::chrono::steady_clock::now();
    bool mismatch = false;
    try {
        GeometryCache cache;
        j["config"] = ordered_json::parse(cfg.to_json_text());
        if (cfg.command == "grid") {
            std::vector<uint32_t> chis =
                cfg.grid_char_exps.empty() ? std::vector<uint32_t>{cfg.family.char_exp}
                                           : cfg.grid_char_exps;
            uint32_t zm = cfg.grid_zeta_conductor ? cfg.grid_zeta_conductor : cfg.family.zeta.m;
            std::vector<long long> zes = cfg.grid_zeta_exps;
            if (zes.empty()) zes = {static_cast<long long>(cfg.family.zeta.e)};
            ordered_json points = ordered_json::array();
            RunConfig sub = cfg;
            sub.command = "verdict";
            int match_count = 0, total = 0;
            for (uint32_t ce : chis)
                for (long long ze : zes) {
                    FamilySpec fam = cfg.family;
                    fam.char_exp = ce;
                    fam.zeta = RootOfUnity::make(zm, ze);
                    fam.validate();
                    ordered_json pt = run_one_command(sub, fam, cache, mismatch);
                    points.push_back(pt);
                    ++total;
                    if (pt.at("verdict").at("criterion_match").get<bool>()) ++match_count;
                }
            j["points"] = points;
            j["summary"] =
                ordered_json{{"points", total}, {"criterion_match", match_count}};
        } else {
            ordered_json one = run_one_command(cfg, cfg.family, cache, mismatch);
            for (auto& [key, val] : one.items()) j[key] = val;
        }
        outcome.exit_code = mismatch ? 2 : 0;
    } catch (const std::exception& e) {
        j["error"] = e.what();
        outcome.exit_code = 1;
    }
    auto t1 = std::chrono::steady_clock::now();
    j["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    outcome.report_json = j.dump(2) + "\n";
    return outcome;
}

}  // namespace shalika
