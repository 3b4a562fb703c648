// Batch driver for the Shalika-period verification engine: reads a JSON run
// configuration, dispatches the requested command, and writes a JSON report.
//
// Exit codes: 0 success, 1 input error, 2 criterion mismatch against the
// closed-form theorem side (a finding, not an input error).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shalika/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"shalika-verifier: exact Shalika-period and transfer-criterion checks for GL(4)"};
    app.require_subcommand(0, 1);

    std::string config_path, out_path;
    int level = 0, precision = -1, jobs = 0;
    app.add_option("--config", config_path, "JSON run configuration (default: stdin)");
    app.add_option("--level", level, "congruence level M override");
    app.add_option("--precision", precision, "p-adic working precision override");
    app.add_option("--jobs", jobs, "worker threads (default: SHALIKA_JOBS or hardware)");
    app.add_option("--out", out_path, "report destination (default: stdout)");

    std::vector<std::string> command_names = {"verdict",    "scan",        "lambda0",
                                              "verify-identities", "lfactor", "central-char",
                                              "grid"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : command_names)
        subs[name] = app.add_subcommand(name, "run the '" + name + "' command");

    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (config_path.empty()) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config '" << config_path << "'\n";
            return 1;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    shalika::RunConfig cfg;
    try {
        cfg = shalika::RunConfig::from_json_text(text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    for (const auto& name : command_names)
        if (subs[name]->parsed()) cfg.command = name;
    if (level > 0) cfg.integral.level = level;
    if (precision > 0) cfg.precision = precision;
    if (jobs > 0) cfg.integral.jobs = jobs;

    shalika::RunOutcome outcome = shalika::run(cfg);
    if (out_path.empty()) {
        std::cout << outcome.report_json;
    } else {
        std::ofstream out(out_path);
        out << outcome.report_json;
    }
    return outcome.exit_code;
}
