// hetnet: coverage analysis of a two-tier downlink with user-centric
// interference nulling. Subcommands select one computational engine
// (or `sweep` to honor the engine list inside the configuration);
// every run reads a JSON configuration — from a file or a bundled
// preset — and writes a CSV result table.
//
// Exit codes: 0 success, 1 validation failure (bad configuration or
// arguments), 2 engine failure.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/experiments.hpp"

namespace {

namespace exp = hetnet::exp;

struct common_args {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> realizations;
};

void add_common(CLI::App* cmd, common_args& a) {
    auto* cfg = cmd->add_option("--config", a.config_path,
                                "Path to a JSON experiment configuration");
    auto* pre = cmd->add_option("--preset", a.preset,
                                "Bundled figure preset (see `hetnet validate"
                                " --help` for names)");
    cfg->excludes(pre);
    pre->excludes(cfg);
    cmd->add_option("--out", a.out_path,
                    "Output CSV path (overrides the config; default stdout)");
    cmd->add_option("--seed", a.seed, "Override the Monte Carlo seed");
    cmd->add_option("--realizations", a.realizations,
                    "Override the Monte Carlo realization count")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{2147483647}));
}

std::string read_document(const common_args& a) {
    if (!a.preset.empty()) return exp::preset_text(a.preset);
    if (a.config_path.empty())
        throw hetnet::config_error(
            "one of --config or --preset is required");
    std::ifstream in(a.config_path, std::ios::binary);
    if (!in)
        throw hetnet::config_error("cannot open config file: " +
                                   a.config_path);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

exp::experiment load(const common_args& a) {
    exp::experiment e = exp::parse_experiment(read_document(a));
    if (a.seed) e.mc.seed = *a.seed;
    if (a.realizations) e.mc.realizations = *a.realizations;
    if (!a.out_path.empty()) e.output_path = a.out_path;
    return e;
}

int run_and_write(exp::experiment e) {
    const std::vector<exp::result_row> rows = exp::run(e);
    if (e.output_path.empty()) {
        exp::write_csv(rows, e.config_hash, std::cout);
    } else {
        std::ofstream out(e.output_path, std::ios::binary);
        if (!out)
            throw hetnet::config_error("cannot open output file: " +
                                       e.output_path);
        exp::write_csv(rows, e.config_hash, out);
        std::cerr << "wrote " << rows.size() << " rows to " << e.output_path
                  << "\n";
    }
    return 0;
}

int run_with_engines(const common_args& a,
                     const std::vector<exp::engine>& engines) {
    exp::experiment e = load(a);
    if (!engines.empty()) e.engines = engines;
    return run_and_write(std::move(e));
}

int run_validate(const common_args& a) {
    const std::vector<std::string> diags =
        exp::validate_config(read_document(a));
    if (diags.empty()) {
        std::cout << "configuration is valid\n";
        return 0;
    }
    for (const auto& d : diags) std::cout << d << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two-tier downlink coverage under user-centric interference "
        "nulling: exact analysis, threshold asymptotics, nulling-budget "
        "optimization, and Monte Carlo validation"};
    app.require_subcommand(1);

    common_args args;
    std::string regime = "low";

    std::string presets;
    for (const auto& n : exp::preset_names()) {
        if (!presets.empty()) presets += ", ";
        presets += n;
    }

    auto* analytic = app.add_subcommand(
        "analytic", "Exact coverage probability over the parameter grid");
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo coverage over the parameter grid");
    auto* asymptotic = app.add_subcommand(
        "asymptotic", "Closed-form coverage/outage expansion at one end of "
                      "the SIR-threshold axis (see --regime)");
    auto* optimize = app.add_subcommand(
        "optimize-u", "Asymptotically optimal nulling budget per threshold "
                      "pair (see --regime)");
    auto* compare = app.add_subcommand(
        "compare", "Simulated three-scheme comparison (nulling at the "
                   "analytically best budget, resource partition, simple "
                   "beamforming) at the first grid point");
    auto* validate = app.add_subcommand(
        "validate", "Check a configuration and list every violated "
                    "invariant without running (presets: " + presets + ")");
    auto* sweep = app.add_subcommand(
        "sweep", "Run the engine list named inside the configuration");

    for (CLI::App* cmd :
         {analytic, simulate, asymptotic, optimize, compare, validate, sweep})
        add_common(cmd, args);
    for (CLI::App* cmd : {asymptotic, optimize})
        cmd->add_option("--regime", regime,
                        "Which end of the SIR-threshold axis")
            ->check(CLI::IsMember({"low", "high"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        // Argument problems are validation failures (exit 1); --help is
        // a success.
        const int code = app.exit(ex);
        return code == 0 ? 0 : 1;
    }

    try {
        const bool low = regime == "low";
        if (validate->parsed()) return run_validate(args);
        if (analytic->parsed())
            return run_with_engines(args, {exp::engine::analytic});
        if (simulate->parsed())
            return run_with_engines(args, {exp::engine::monte_carlo});
        if (asymptotic->parsed())
            return run_with_engines(args, {low ? exp::engine::asymptotic_low
                                              : exp::engine::asymptotic_high});
        if (optimize->parsed())
            return run_with_engines(args, {low ? exp::engine::optimize_u_low
                                              : exp::engine::optimize_u_high});
        if (compare->parsed())
            return run_with_engines(args, {exp::engine::compare});
        if (sweep->parsed()) return run_with_engines(args, {});
        std::cerr << "error: no subcommand selected\n";
        return 1;
    } catch (const hetnet::config_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const hetnet::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
