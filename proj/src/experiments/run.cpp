#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hetnet/asymptotics.hpp"
#include "hetnet/coverage.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/experiments.hpp"
#include "hetnet/sim.hpp"

namespace hetnet::exp {
namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr const char* kCsvHeader =
    "u,t1,t2,beta_db,method,scheme,eta,value,stderr,wall_time_ms";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
        .count();
}

// Engine failures surface as engine_error carrying the grid point, so a
// long sweep that dies half-way names the offending configuration.
[[noreturn]] void engine_failed(engine eng, int u, double t1, double t2,
                                double beta_db, const std::string& what) {
    std::ostringstream os;
    os << "engine " << engine_name(eng) << " failed";
    std::string parts;
    auto add = [&parts](const std::string& s) {
        parts += parts.empty() ? "" : ", ";
        parts += s;
    };
    std::ostringstream ctx;
    if (u >= 0) add("u=" + std::to_string(u));
    if (!std::isnan(t1)) {
        ctx << "T=(" << t1 << ", " << t2 << ")";
        add(ctx.str());
        ctx.str("");
    }
    if (!std::isnan(beta_db)) {
        ctx << "beta=" << beta_db << " dB";
        add(ctx.str());
    }
    if (!parts.empty()) os << " at " << parts;
    os << ": " << what;
    throw engine_error(os.str());
}

sim::sim_options sim_opts(const experiment& e) {
    sim::sim_options opts;
    opts.window_side = e.mc.window_side;
    opts.field = e.mc.field;
    opts.toroidal = e.mc.toroidal;
    return opts;
}

void run_analytic(const experiment& e, std::vector<result_row>& rows) {
    for (int u : e.dof_grid)
        for (const auto& [t1, t2] : e.threshold_grid) {
            const in_config cfg{u, t1, t2};
            for (std::size_t b = 0; b < e.beta_grid.size(); ++b) {
                const auto t0 = clock_type::now();
                double v = 0.0;
                try {
                    v = coverage_overall(e.params, cfg, e.beta_grid[b]);
                } catch (const std::exception& ex) {
                    engine_failed(engine::analytic, u, t1, t2,
                                  e.beta_db_grid[b], ex.what());
                }
                rows.push_back({u, t1, t2, e.beta_db_grid[b], "analytic",
                                "nulling", kNaN, v, kNaN, ms_since(t0)});
            }
        }
}

void run_asymptotic_low(const experiment& e, std::vector<result_row>& rows) {
    for (int u : e.dof_grid)
        for (const auto& [t1, t2] : e.threshold_grid) {
            const in_config cfg{u, t1, t2};
            const auto t0 = clock_type::now();
            outage_asymptote a;
            try {
                a = low_sir_outage(e.params, cfg);
            } catch (const std::exception& ex) {
                engine_failed(engine::asymptotic_low, u, t1, t2, kNaN,
                              ex.what());
            }
            const double per_row =
                ms_since(t0) / static_cast<double>(e.beta_grid.size());
            for (std::size_t b = 0; b < e.beta_grid.size(); ++b) {
                const double v =
                    a.coefficient * std::pow(e.beta_grid[b], a.order);
                rows.push_back({u, t1, t2, e.beta_db_grid[b], "asymptotic-low",
                                "nulling", kNaN, v, kNaN, per_row});
            }
        }
}

void run_asymptotic_high(const experiment& e, std::vector<result_row>& rows) {
    const bool equal_exponents =
        e.params.macro_pathloss == e.params.pico_pathloss;
    for (int u : e.dof_grid)
        for (const auto& [t1, t2] : e.threshold_grid) {
            const in_config cfg{u, t1, t2};
            const auto t0 = clock_type::now();
            coverage_asymptote ca;
            coverage_bounds cb;
            try {
                if (equal_exponents)
                    ca = high_sir_equal(e.params, cfg);
                else
                    cb = high_sir_bounds(e.params, cfg);
            } catch (const std::exception& ex) {
                engine_failed(engine::asymptotic_high, u, t1, t2, kNaN,
                              ex.what());
            }
            const double per_row =
                ms_since(t0) / static_cast<double>(e.beta_grid.size());
            for (std::size_t b = 0; b < e.beta_grid.size(); ++b) {
                const double beta = e.beta_grid[b];
                const double db = e.beta_db_grid[b];
                if (equal_exponents) {
                    const double v = ca.coefficient * std::pow(beta, ca.order);
                    rows.push_back({u, t1, t2, db, "asymptotic-high",
                                    "nulling", kNaN, v, kNaN, per_row});
                } else {
                    // Distinct exponents give an envelope, not a single
                    // expansion: one row per side, upper first.
                    const double hi =
                        cb.upper_coefficient * std::pow(beta, cb.upper_order);
                    const double lo =
                        cb.lower_coefficient * std::pow(beta, cb.lower_order);
                    rows.push_back({u, t1, t2, db, "asymptotic-high-upper",
                                    "nulling", kNaN, hi, kNaN, per_row / 2.0});
                    rows.push_back({u, t1, t2, db, "asymptotic-high-lower",
                                    "nulling", kNaN, lo, kNaN, per_row / 2.0});
                }
            }
        }
}

void run_monte_carlo(const experiment& e, std::vector<result_row>& rows) {
    std::vector<in_config> cfgs;
    for (int u : e.dof_grid)
        for (const auto& [t1, t2] : e.threshold_grid)
            cfgs.push_back({u, t1, t2});

    const auto t0 = clock_type::now();
    std::vector<std::vector<coverage_result>> grid;
    try {
        grid = sim::estimate_coverage_grid(
            e.params, cfgs, e.beta_grid,
            static_cast<int>(e.mc.realizations), e.mc.mode, sim_opts(e),
            e.mc.seed);
    } catch (const std::exception& ex) {
        engine_failed(engine::monte_carlo, -1, kNaN, kNaN, kNaN, ex.what());
    }
    // One shared-geometry pass covers the whole grid; attribute the wall
    // time evenly since per-cell cost is not separable.
    const double per_row = ms_since(t0) / static_cast<double>(
                               cfgs.size() * e.beta_grid.size());
    std::size_t k = 0;
    for (int u : e.dof_grid)
        for (const auto& [t1, t2] : e.threshold_grid) {
            for (std::size_t b = 0; b < e.beta_grid.size(); ++b)
                rows.push_back({u, t1, t2, e.beta_db_grid[b], "monte-carlo",
                                "nulling", kNaN, grid[k][b].value,
                                grid[k][b].std_err, per_row});
            ++k;
        }
}

void run_abs_baseline(const experiment& e, std::vector<result_row>& rows) {
    for (const auto& [t1, t2] : e.threshold_grid)
        for (std::size_t b = 0; b < e.beta_grid.size(); ++b) {
            const auto t0 = clock_type::now();
            sim::abs_result r;
            try {
                r = sim::abs_baseline_coverage(
                    e.params, t1, t2, e.beta_grid[b], e.eta_grid,
                    static_cast<int>(e.mc.realizations), sim_opts(e),
                    e.mc.seed);
            } catch (const std::exception& ex) {
                engine_failed(engine::abs_baseline, -1, t1, t2,
                              e.beta_db_grid[b], ex.what());
            }
            const double per_row =
                ms_since(t0) / static_cast<double>(r.eta_grid.size());
            for (std::size_t k = 0; k < r.eta_grid.size(); ++k)
                rows.push_back({-1, t1, t2, e.beta_db_grid[b], "abs-baseline",
                                "resource-partition", r.eta_grid[k],
                                r.per_eta[k], r.per_eta_std_err[k], per_row});
        }
}

void run_optimize_u(const experiment& e, engine eng,
                    std::vector<result_row>& rows) {
    for (const auto& [t1, t2] : e.threshold_grid) {
        const auto t0 = clock_type::now();
        int best = 0;
        try {
            best = eng == engine::optimize_u_low
                       ? optimal_in_dof_low_sir(e.params, t1, t2)
                       : optimal_in_dof_high_sir(e.params, t1, t2);
        } catch (const std::exception& ex) {
            engine_failed(eng, -1, t1, t2, kNaN, ex.what());
        }
        rows.push_back({best, t1, t2, kNaN, engine_name(eng), "nulling", kNaN,
                        static_cast<double>(best), kNaN, ms_since(t0)});
    }
}

// Three-scheme comparison at the first grid point: nulling at the
// analytically optimal budget within the configured DoF grid (first
// maximizer wins ties), the resource-partition baseline at its best
// split, and simple beamforming, all simulated with the common seed.
void run_compare(const experiment& e, std::vector<result_row>& rows) {
    const auto [t1, t2] = e.threshold_grid.front();
    const double beta = e.beta_grid.front();
    const double db = e.beta_db_grid.front();
    const int n = static_cast<int>(e.mc.realizations);
    const sim::sim_options opts = sim_opts(e);

    int best_u = e.dof_grid.front();
    double best_cov = -1.0;
    for (int u : e.dof_grid) {
        double v = 0.0;
        try {
            v = coverage_overall(e.params, in_config{u, t1, t2}, beta);
        } catch (const std::exception& ex) {
            engine_failed(engine::compare, u, t1, t2, db, ex.what());
        }
        if (v > best_cov) {
            best_cov = v;
            best_u = u;
        }
    }

    try {
        auto t0 = clock_type::now();
        const auto in = sim::estimate_coverage(
            e.params, in_config{best_u, t1, t2}, {beta}, n, e.mc.mode, opts,
            e.mc.seed);
        const double ms_in = ms_since(t0);

        t0 = clock_type::now();
        const sim::abs_result ab = sim::abs_baseline_coverage(
            e.params, t1, t2, beta, e.eta_grid, n, opts, e.mc.seed);
        const double ms_ab = ms_since(t0);

        t0 = clock_type::now();
        const auto simple = sim::estimate_coverage(
            e.params, in_config{0, 1.0, 1.0}, {beta}, n, e.mc.mode, opts,
            e.mc.seed);
        const double ms_simple = ms_since(t0);

        rows.push_back({best_u, t1, t2, db, "monte-carlo", "nulling", kNaN,
                        in.front().value, in.front().std_err, ms_in});
        rows.push_back({-1, t1, t2, db, "monte-carlo", "resource-partition",
                        ab.best_eta, ab.coverage, ab.std_err, ms_ab});
        rows.push_back({0, 1.0, 1.0, db, "monte-carlo", "simple", kNaN,
                        simple.front().value, simple.front().std_err,
                        ms_simple});
    } catch (const std::exception& ex) {
        engine_failed(engine::compare, best_u, t1, t2, db, ex.what());
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell(double v) { return std::isnan(v) ? std::string() : fmt(v); }

double parse_cell(const std::string& s, const std::string& line) {
    if (s.empty()) return kNaN;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw config_error("malformed result table cell '" + s + "' in row '" +
                           line + "'");
    return v;
}

}  // namespace

std::vector<result_row> run(const experiment& e) {
    std::vector<result_row> rows;
    for (engine eng : e.engines) {
        switch (eng) {
            case engine::analytic: run_analytic(e, rows); break;
            case engine::asymptotic_low: run_asymptotic_low(e, rows); break;
            case engine::asymptotic_high: run_asymptotic_high(e, rows); break;
            case engine::monte_carlo: run_monte_carlo(e, rows); break;
            case engine::abs_baseline: run_abs_baseline(e, rows); break;
            case engine::optimize_u_low:
            case engine::optimize_u_high:
                run_optimize_u(e, eng, rows);
                break;
            case engine::compare: run_compare(e, rows); break;
        }
    }
    return rows;
}

void write_csv(const std::vector<result_row>& rows, std::uint64_t config_hash,
               std::ostream& out) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(config_hash));
    out << "# hetnet " << kToolVersion << " config=" << hex
        << " (wall_time_ms is diagnostic and excluded from determinism"
        << " comparisons)\n";
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << (r.u < 0 ? std::string() : std::to_string(r.u)) << ','
            << fmt(r.t1) << ',' << fmt(r.t2) << ',' << cell(r.beta_db) << ','
            << r.method << ',' << r.scheme << ',' << cell(r.eta) << ','
            << cell(r.value) << ',' << cell(r.std_err) << ','
            << fmt(r.wall_time_ms) << '\n';
    }
}

std::vector<result_row> read_csv(std::istream& in) {
    std::vector<result_row> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kCsvHeader)
                throw config_error("malformed result table: unexpected header '"
                                   + line + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f(1);
        for (char ch : line) {
            if (ch == ',')
                f.emplace_back();
            else
                f.back().push_back(ch);
        }
        if (f.size() != 10)
            throw config_error("malformed result table row: '" + line + "'");
        result_row r;
        r.u = f[0].empty() ? -1 : std::atoi(f[0].c_str());
        r.t1 = parse_cell(f[1], line);
        r.t2 = parse_cell(f[2], line);
        r.beta_db = parse_cell(f[3], line);
        r.method = f[4];
        r.scheme = f[5];
        r.eta = parse_cell(f[6], line);
        r.value = parse_cell(f[7], line);
        r.std_err = parse_cell(f[8], line);
        r.wall_time_ms = parse_cell(f[9], line);
        rows.push_back(std::move(r));
    }
    if (!header_seen)
        throw config_error("malformed result table: missing header");
    return rows;
}

}  // namespace hetnet::exp
