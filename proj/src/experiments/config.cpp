#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "hetnet/errors.hpp"
#include "hetnet/experiments.hpp"
#include "json.hpp"

namespace hetnet::exp {
namespace {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Collects every violated invariant instead of stopping at the first,
// so the validate command can report the full picture in one pass.
struct checker {
    std::vector<std::string> diags;

    void fail(const std::string& msg) { diags.push_back(msg); }

    bool require_object(const json& j, const std::string& name) {
        if (j.is_object()) return true;
        fail(name + " must be an object");
        return false;
    }

    void reject_unknown(const json& obj, const std::string& name,
                        std::initializer_list<const char*> known) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char* k : known) ok = ok || it.key() == k;
            if (!ok) fail("unknown key '" + it.key() + "' in " + name);
        }
    }

    // Scalar-or-list numeric field, flattened to a list.
    std::vector<double> numbers(const json& obj, const std::string& block,
                                const std::string& key, bool required = true) {
        const std::string name = block.empty() ? key : block + "." + key;
        if (!obj.contains(key)) {
            if (required) fail(name + " is required");
            return {};
        }
        const json& j = obj.at(key);
        std::vector<double> out;
        if (j.is_number()) {
            out.push_back(j.get<double>());
        } else if (j.is_array() && !j.empty()) {
            for (const auto& v : j) {
                if (!v.is_number()) {
                    fail(name + " entries must be numbers");
                    return {};
                }
                out.push_back(v.get<double>());
            }
        } else {
            fail(name + " must be a number or a non-empty list of numbers");
            return {};
        }
        for (double v : out)
            if (!std::isfinite(v)) {
                fail(name + " entries must be finite");
                return {};
            }
        return out;
    }

    double scalar(const json& obj, const std::string& block,
                  const std::string& key, double fallback) {
        const std::string name = block + "." + key;
        if (!obj.contains(key)) return fallback;
        if (!obj.at(key).is_number()) {
            fail(name + " must be a number");
            return fallback;
        }
        const double v = obj.at(key).get<double>();
        if (!std::isfinite(v)) {
            fail(name + " must be finite");
            return fallback;
        }
        return v;
    }

    int integer(const json& obj, const std::string& block,
                const std::string& key, int fallback) {
        const double v = scalar(obj, block, key, fallback);
        if (v != std::floor(v)) {
            fail(block + "." + key + " must be an integer");
            return fallback;
        }
        return static_cast<int>(v);
    }
};

engine engine_from_name(const std::string& s, checker& c) {
    if (s == "analytic") return engine::analytic;
    if (s == "asymptotic-low") return engine::asymptotic_low;
    if (s == "asymptotic-high") return engine::asymptotic_high;
    if (s == "monte-carlo") return engine::monte_carlo;
    if (s == "abs-baseline") return engine::abs_baseline;
    if (s == "optimize-u-low") return engine::optimize_u_low;
    if (s == "optimize-u-high") return engine::optimize_u_high;
    if (s == "compare") return engine::compare;
    c.fail("engine: unknown engine '" + s + "'");
    return engine::analytic;
}

void parse_network(const json& root, checker& c, network_params& p) {
    if (!root.contains("network")) {
        c.fail("network block is required");
        return;
    }
    const json& n = root.at("network");
    if (!c.require_object(n, "network")) return;
    c.reject_unknown(n, "network",
                     {"macro_density", "pico_density", "user_density",
                      "power_ratio_db", "macro_power", "pico_power",
                      "macro_antennas", "pico_antennas", "macro_pathloss",
                      "pico_pathloss"});

    p.macro_density = c.scalar(n, "network", "macro_density", 0.0);
    p.pico_density = c.scalar(n, "network", "pico_density", 0.0);
    p.user_density = c.scalar(n, "network", "user_density", p.user_density);
    if (!(p.macro_density > 0.0)) c.fail("network.macro_density must be > 0");
    if (!(p.pico_density > 0.0)) c.fail("network.pico_density must be > 0");
    if (!(p.user_density > 0.0)) c.fail("network.user_density must be > 0");

    // Transmit powers: either a dB ratio (pico power normalized to 1)
    // or both linear powers. dB converts to linear here and only here.
    const bool has_ratio = n.contains("power_ratio_db");
    const bool has_linear = n.contains("macro_power") || n.contains("pico_power");
    if (has_ratio && has_linear) {
        c.fail("network: give either power_ratio_db or macro_power/pico_power, "
               "not both");
    } else if (has_ratio) {
        p.pico_power = 1.0;
        p.macro_power = db_to_linear(c.scalar(n, "network", "power_ratio_db", 0.0));
    } else if (n.contains("macro_power") && n.contains("pico_power")) {
        p.macro_power = c.scalar(n, "network", "macro_power", 0.0);
        p.pico_power = c.scalar(n, "network", "pico_power", 0.0);
    } else {
        c.fail("network: power_ratio_db or both macro_power and pico_power "
               "are required");
    }
    if (!(p.macro_power > 0.0) || !(p.pico_power > 0.0))
        c.fail("network: powers must be > 0");

    p.macro_antennas = c.integer(n, "network", "macro_antennas", 0);
    p.pico_antennas = c.integer(n, "network", "pico_antennas", 0);
    if (p.pico_antennas < 1 || p.macro_antennas <= p.pico_antennas)
        c.fail("network: macro_antennas must exceed pico_antennas, "
               "which must be >= 1");

    p.macro_pathloss = c.scalar(n, "network", "macro_pathloss", 0.0);
    p.pico_pathloss = c.scalar(n, "network", "pico_pathloss", 0.0);
    if (!(p.macro_pathloss > 2.0) || !(p.pico_pathloss > 2.0))
        c.fail("network: path-loss exponents must exceed 2");
}

void parse_nulling(const json& root, checker& c, experiment& e) {
    if (!root.contains("nulling")) {
        c.fail("nulling block is required");
        return;
    }
    const json& n = root.at("nulling");
    if (!c.require_object(n, "nulling")) return;
    c.reject_unknown(n, "nulling",
                     {"max_in_dof", "macro_threshold", "pico_threshold"});

    for (double v : c.numbers(n, "nulling", "max_in_dof")) {
        if (v != std::floor(v)) {
            c.fail("nulling.max_in_dof entries must be integers");
            break;
        }
        e.dof_grid.push_back(static_cast<int>(v));
    }
    for (int u : e.dof_grid) {
        if (u < 0) c.fail("nulling.max_in_dof: U must be >= 0");
        if (u > e.params.macro_antennas - 1)
            c.fail("nulling.max_in_dof: U must be <= N1 - 1");
    }

    // Request thresholds are linear ratios. The two lists sweep
    // independently: the grid is their Cartesian product, macro-major,
    // matching the lexicographic output ordering.
    const std::vector<double> t1 = c.numbers(n, "nulling", "macro_threshold");
    const std::vector<double> t2 = c.numbers(n, "nulling", "pico_threshold");
    bool bad = false;
    for (double v : t1) bad = bad || !(v >= 1.0);
    for (double v : t2) bad = bad || !(v >= 1.0);
    if (bad) c.fail("nulling: thresholds must be >= 1");
    for (double a : t1)
        for (double b : t2) e.threshold_grid.emplace_back(a, b);
}

void parse_mc(const json& root, checker& c, mc_settings& m) {
    if (!root.contains("monte_carlo")) return;
    const json& j = root.at("monte_carlo");
    if (!c.require_object(j, "monte_carlo")) return;
    c.reject_unknown(j, "monte_carlo",
                     {"realizations", "window_side", "mode", "field",
                      "toroidal", "seed"});

    const double n = c.scalar(j, "monte_carlo", "realizations",
                              static_cast<double>(m.realizations));
    if (!(n >= 1.0) || n != std::floor(n) || n > 2147483647.0)
        c.fail("monte_carlo.realizations must be a positive integer "
               "(at most 2147483647)");
    else
        m.realizations = static_cast<std::int64_t>(n);

    m.window_side = c.scalar(j, "monte_carlo", "window_side", m.window_side);
    if (!(m.window_side > 0.0)) c.fail("monte_carlo.window_side must be > 0");

    if (j.contains("mode")) {
        const std::string s = j.at("mode").is_string()
                                  ? j.at("mode").get<std::string>()
                                  : std::string();
        if (s == "exact")
            m.mode = sim::channel_mode::exact;
        else if (s == "distributional")
            m.mode = sim::channel_mode::distributional;
        else
            c.fail("monte_carlo.mode must be 'exact' or 'distributional'");
    }
    if (j.contains("field")) {
        const std::string s = j.at("field").is_string()
                                  ? j.at("field").get<std::string>()
                                  : std::string();
        if (s == "full")
            m.field = sim::user_field::full;
        else if (s == "approximation")
            m.field = sim::user_field::approximation;
        else
            c.fail("monte_carlo.field must be 'full' or 'approximation'");
    }
    if (j.contains("toroidal")) {
        if (j.at("toroidal").is_boolean())
            m.toroidal = j.at("toroidal").get<bool>();
        else
            c.fail("monte_carlo.toroidal must be a boolean");
    }
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0))
            m.seed = s.get<std::uint64_t>();
        else
            c.fail("monte_carlo.seed must be a non-negative integer");
    }
}

experiment parse_checked(const std::string& text,
                         std::vector<std::string>& diags) {
    experiment e;
    e.config_hash = fnv1a_hash(text);
    checker c;

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& ex) {
        diags.push_back(std::string("not valid JSON: ") + ex.what());
        return e;
    }
    if (!root.is_object()) {
        diags.push_back("configuration must be a JSON object");
        return e;
    }
    c.reject_unknown(root, "the configuration",
                     {"network", "nulling", "beta_db", "engine", "monte_carlo",
                      "resource_partition", "output"});

    parse_network(root, c, e.params);
    parse_nulling(root, c, e);

    e.beta_db_grid = c.numbers(root, "", "beta_db");
    for (double db : e.beta_db_grid) e.beta_grid.push_back(db_to_linear(db));

    if (!root.contains("engine")) {
        c.fail("engine is required");
    } else {
        const json& j = root.at("engine");
        std::vector<std::string> names;
        if (j.is_string())
            names.push_back(j.get<std::string>());
        else if (j.is_array() && !j.empty()) {
            for (const auto& v : j)
                if (v.is_string())
                    names.push_back(v.get<std::string>());
                else
                    c.fail("engine entries must be strings");
        } else {
            c.fail("engine must be a string or a non-empty list of strings");
        }
        for (const auto& s : names) e.engines.push_back(engine_from_name(s, c));
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t k = i + 1; k < names.size(); ++k)
                if (names[i] == names[k]) {
                    c.fail("engine list contains duplicates");
                    i = names.size();
                    break;
                }
    }

    parse_mc(root, c, e.mc);

    if (root.contains("resource_partition")) {
        const json& j = root.at("resource_partition");
        if (c.require_object(j, "resource_partition")) {
            c.reject_unknown(j, "resource_partition", {"eta_grid"});
            const auto etas = c.numbers(j, "resource_partition", "eta_grid");
            if (!etas.empty()) e.eta_grid = etas;
        }
    }
    for (double eta : e.eta_grid)
        if (!(eta > 0.0) || !(eta < 1.0))
            c.fail("resource_partition.eta_grid values must lie strictly in "
                   "(0, 1)");

    if (root.contains("output")) {
        if (root.at("output").is_string())
            e.output_path = root.at("output").get<std::string>();
        else
            c.fail("output must be a string path");
    }

    diags = std::move(c.diags);
    return e;
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : text) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string engine_name(engine e) {
    switch (e) {
        case engine::analytic: return "analytic";
        case engine::asymptotic_low: return "asymptotic-low";
        case engine::asymptotic_high: return "asymptotic-high";
        case engine::monte_carlo: return "monte-carlo";
        case engine::abs_baseline: return "abs-baseline";
        case engine::optimize_u_low: return "optimize-u-low";
        case engine::optimize_u_high: return "optimize-u-high";
        case engine::compare: return "compare";
    }
    return "unknown";
}

std::vector<std::string> validate_config(const std::string& json_text) {
    std::vector<std::string> diags;
    parse_checked(json_text, diags);
    return diags;
}

experiment parse_experiment(const std::string& json_text) {
    std::vector<std::string> diags;
    experiment e = parse_checked(json_text, diags);
    if (!diags.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& d : diags) msg += "\n  - " + d;
        throw config_error(msg);
    }
    return e;
}

experiment load_experiment(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment(buf.str());
}

}  // namespace hetnet::exp
