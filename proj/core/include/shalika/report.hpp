#pragma once

#include <string>

#include "shalika/proof_identities.hpp"
#include "shalika/verdict.hpp"

namespace shalika {

// Batch-run configuration, the JSON surface of the CLI. Exact values only:
// characters by exponent, roots of unity as {m, e}.
struct RunConfig {
    std::string schema = "shalika-verifier/1";
    std::string command;  // verdict | scan | lambda0 | verify-identities | lfactor | central-char | grid
    FamilySpec family;
    IntegralConfig integral;
    Window k_window{-6, 6};
    bool k_window_set = false;
    int precision = -1;
    int identity_draws = 1000;
    uint64_t seed = 20240901;
    // grid ranges (empty = the point value from `family`)
    std::vector<uint32_t> grid_char_exps;
    std::vector<long long> grid_zeta_exps;  // exponents against family.zeta conductor
    uint32_t grid_zeta_conductor = 0;       // 0 = use family.zeta.m

    static RunConfig from_json_text(const std::string& text);
    std::string to_json_text(int indent = 2) const;
};

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 1 input error, 2 criterion mismatch
    std::string report_json;
};

// Execute one configuration; never throws for config-level errors (they are
// encoded as exit code 1 with a diagnostic report).
RunOutcome run(const RunConfig& cfg);

// serialization helpers shared with tests
std::string cyc_to_json_text(const Cyc& c);

}  // namespace shalika
