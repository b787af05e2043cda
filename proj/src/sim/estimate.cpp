#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "hetnet/errors.hpp"
#include "hetnet/sim.hpp"
#include "sim/core.hpp"

namespace hetnet::sim {
namespace {

using detail::geometry;

int worker_count(std::int64_t n) {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(
        std::clamp<std::int64_t>(std::min<std::int64_t>(hw ? hw : 1, 8), 1,
                                 std::max<std::int64_t>(n, 1)));
}

// Runs fn(lo, hi, block) over an even partition of [0, n) into
// worker_count(n) blocks. Blocks only ever touch their own accumulator
// slot, and integer tallies make the merged result identical for every
// worker count. The first worker exception (in block order) is
// rethrown after all workers finish.
template <typename Fn>
void parallel_blocks(std::int64_t n, Fn&& fn) {
    const int workers = worker_count(n);
    if (workers == 1) {
        fn(std::int64_t{0}, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (int b = 0; b < workers; ++b) {
        const std::int64_t lo = n * b / workers;
        const std::int64_t hi = n * (b + 1) / workers;
        pool.emplace_back([&fn, &errors, lo, hi, b] {
            try {
                fn(lo, hi, b);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

coverage_result make_result(double beta, std::int64_t hits, std::int64_t n) {
    coverage_result r;
    r.beta = beta;
    r.how = method::monte_carlo;
    r.value = static_cast<double>(hits) / static_cast<double>(n);
    r.std_err = std::sqrt(std::max(r.value * (1.0 - r.value), 0.0) /
                          static_cast<double>(n));
    return r;
}

}  // namespace

std::vector<std::vector<coverage_result>>
estimate_coverage_grid(const network_params& p,
                       const std::vector<in_config>& cfgs,
                       const std::vector<double>& beta_grid,
                       int n_realizations, channel_mode mode,
                       const sim_options& opts, std::uint64_t seed) {
    p.validate();
    if (cfgs.empty()) throw domain_error("need at least one configuration");
    for (const auto& cfg : cfgs) cfg.validate(p);
    if (beta_grid.empty()) throw domain_error("need at least one threshold");
    for (double b : beta_grid)
        if (!(b >= 0.0) || !std::isfinite(b))
            throw domain_error("thresholds must be finite and non-negative");
    if (n_realizations < 1)
        throw domain_error("need at least one realization");
    if (!(opts.window_side > 0.0))
        throw domain_error("window side must be positive");

    // Configurations sharing a threshold pair share requests and the
    // grant shuffle; group them preserving first-seen order.
    std::vector<std::pair<std::pair<double, double>, std::vector<int>>> groups;
    for (int c = 0; c < static_cast<int>(cfgs.size()); ++c) {
        const std::pair<double, double> key{cfgs[c].macro_threshold,
                                            cfgs[c].pico_threshold};
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end())
            groups.push_back({key, {c}});
        else
            it->second.push_back(c);
    }

    const int nc = static_cast<int>(cfgs.size());
    const int nb = static_cast<int>(beta_grid.size());
    const std::int64_t n = n_realizations;

    std::vector<std::vector<std::int64_t>> block_hits(
        worker_count(n), std::vector<std::int64_t>(nc * nb, 0));

    parallel_blocks(n, [&](std::int64_t lo, std::int64_t hi, int block) {
        auto& hits = block_hits[block];
        for (std::int64_t i = lo; i < hi; ++i) {
            geometry g = detail::sample_geometry(p, opts, seed, i);

            // Requests and shuffled grant order per threshold pair.
            std::vector<std::vector<std::vector<int>>> shuffled(groups.size());
            for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                shuffled[gi] = detail::compute_requests(
                    g, p, opts, groups[gi].first.first, groups[gi].first.second);
                auto sel = detail::purpose_stream(
                    seed, i, detail::tag_selection,
                    detail::threshold_tag(groups[gi].first.first,
                                          groups[gi].first.second));
                detail::shuffle_requests(shuffled[gi], sel);
            }

            snapshot s;
            s.params = p;
            s.opts = opts;
            s.resample_attempts = g.attempts;
            s.macro_positions = std::move(g.macro);
            s.pico_positions = std::move(g.pico);
            s.user_positions = std::move(g.users);
            s.associations = std::move(g.assoc);
            s.macro_schedule = std::move(g.macro_sched);
            s.pico_schedule = std::move(g.pico_sched);
            s.scheduled = std::move(g.scheduled);
            s.in_targets.resize(s.macro_positions.size());

            for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                for (const int c : groups[gi].second) {
                    s.cfg = cfgs[c];
                    const std::size_t u = cfgs[c].max_in_dof;
                    for (std::size_t l = 0; l < shuffled[gi].size(); ++l) {
                        const auto& lst = shuffled[gi][l];
                        const std::size_t take = std::min(u, lst.size());
                        s.in_targets[l].assign(lst.begin(), lst.begin() + take);
                    }
                    const auto ch = draw_channels(
                        s, mode, detail::child_seed(seed, i, c));
                    const double sir = typical_sir(s, ch);
                    for (int b = 0; b < nb; ++b)
                        hits[c * nb + b] += sir > beta_grid[b] ? 1 : 0;
                }
            }
        }
    });

    std::vector<std::int64_t> total(nc * nb, 0);
    for (const auto& hits : block_hits)
        for (int j = 0; j < nc * nb; ++j) total[j] += hits[j];

    std::vector<std::vector<coverage_result>> out(nc);
    for (int c = 0; c < nc; ++c) {
        out[c].reserve(nb);
        for (int b = 0; b < nb; ++b)
            out[c].push_back(make_result(beta_grid[b], total[c * nb + b], n));
    }
    return out;
}

std::vector<coverage_result>
estimate_coverage(const network_params& p, const in_config& cfg,
                  const std::vector<double>& beta_grid, int n_realizations,
                  channel_mode mode, const sim_options& opts,
                  std::uint64_t seed) {
    return estimate_coverage_grid(p, {cfg}, beta_grid, n_realizations, mode,
                                  opts, seed)[0];
}

abs_result abs_baseline_coverage(const network_params& p, double t1,
                                 double t2, double beta,
                                 const std::vector<double>& eta_grid,
                                 int n_realizations, const sim_options& opts,
                                 std::uint64_t seed) {
    p.validate();
    if (!(t1 >= 1.0) || !(t2 >= 1.0))
        throw domain_error("request thresholds must be at least 1");
    if (eta_grid.empty())
        throw domain_error("need at least one resource split");
    for (double e : eta_grid)
        if (!(e > 0.0) || !(e < 1.0))
            throw domain_error("resource splits must lie strictly in (0, 1)");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw domain_error("threshold must be positive and finite");
    if (n_realizations < 1)
        throw domain_error("need at least one realization");
    if (!(opts.window_side > 0.0))
        throw domain_error("window side must be positive");

    const std::int64_t n = n_realizations;
    const point origin{0.0, 0.0};
    const auto n_eta = eta_grid.size();

    // Coverage is measured at a typical resource unit: the user is
    // covered when the unit belongs to its serving BS's fraction AND
    // its within-fraction SIR clears beta, so a class allocated
    // fraction f contributes f times its SIR coverage. Three counters
    // reconstruct the whole eta grid: hits while the serving BS is a
    // partitioned macro (weight 1-eta), hits in the complementary
    // class (weight eta), and hits in realizations where no macro
    // holds a request, where the partition collapses and every BS
    // keeps the full resource (weight 1).
    struct hit_counts {
        std::int64_t partitioned = 0;
        std::int64_t open = 0;
        std::int64_t collapsed = 0;
    };
    std::vector<hit_counts> block_hits(worker_count(n));

    parallel_blocks(n, [&](std::int64_t lo, std::int64_t hi, int block) {
        hit_counts hits;
        for (std::int64_t i = lo; i < hi; ++i) {
            const geometry g = detail::sample_geometry(p, opts, seed, i);
            const auto requests = detail::compute_requests(g, p, opts, t1, t2);
            const bs_ref serving = g.assoc[0];
            // One fraction holds the macros with at least one request,
            // the other every remaining BS; only the typical user's own
            // fraction interferes with it.
            const bool serving_protected =
                serving.t == tier::macro && !requests[serving.index].empty();
            bool partition_exists = false;
            for (const auto& r : requests)
                if (!r.empty()) {
                    partition_exists = true;
                    break;
                }

            auto rng = detail::purpose_stream(seed, i, detail::tag_channel, 0);
            const int n_own = serving.t == tier::macro ? p.macro_antennas
                                                       : p.pico_antennas;
            const double desired_gain = detail::gamma_int(rng, n_own);

            const auto rx = [&](tier t, const point& pos, double gain) {
                const double d_sq = std::max(
                    detail::dist_sq(origin, pos, opts.window_side,
                                    opts.toroidal),
                    1e-300);
                const double power =
                    t == tier::macro ? p.macro_power : p.pico_power;
                const double alpha =
                    t == tier::macro ? p.macro_pathloss : p.pico_pathloss;
                return power * std::pow(d_sq, -0.5 * alpha) * gain;
            };

            double interference = 0.0;
            for (int l = 0; l < static_cast<int>(g.macro.size()); ++l) {
                if (serving.t == tier::macro && serving.index == l) continue;
                if (requests[l].empty() == serving_protected) continue;
                interference += rx(tier::macro, g.macro[l], detail::exp1(rng));
            }
            if (!serving_protected) {
                for (int k = 0; k < static_cast<int>(g.pico.size()); ++k) {
                    if (serving.t == tier::pico && serving.index == k) continue;
                    interference += rx(tier::pico, g.pico[k], detail::exp1(rng));
                }
            }

            const point serving_pos = serving.t == tier::macro
                                          ? g.macro[serving.index]
                                          : g.pico[serving.index];
            const double desired = rx(serving.t, serving_pos, desired_gain);
            const double sir =
                interference == 0.0 ? std::numeric_limits<double>::infinity()
                                    : desired / interference;
            if (sir > beta) {
                if (!partition_exists)
                    ++hits.collapsed;
                else if (serving_protected)
                    ++hits.partitioned;
                else
                    ++hits.open;
            }
        }
        block_hits[block] = hits;
    });

    hit_counts hits;
    for (const auto& h : block_hits) {
        hits.partitioned += h.partitioned;
        hits.open += h.open;
        hits.collapsed += h.collapsed;
    }

    abs_result res;
    res.eta_grid = eta_grid;
    res.per_eta.resize(n_eta);
    res.per_eta_std_err.resize(n_eta);
    const double dn = static_cast<double>(n);
    for (std::size_t j = 0; j < n_eta; ++j) {
        const double w_part = 1.0 - eta_grid[j];
        const double w_open = eta_grid[j];
        // Mean and variance of the per-realization weight, which takes
        // the class weight on a covered realization and 0 otherwise.
        const double mean = (w_part * static_cast<double>(hits.partitioned) +
                             w_open * static_cast<double>(hits.open) +
                             static_cast<double>(hits.collapsed)) /
                            dn;
        const double mean_sq =
            (w_part * w_part * static_cast<double>(hits.partitioned) +
             w_open * w_open * static_cast<double>(hits.open) +
             static_cast<double>(hits.collapsed)) /
            dn;
        res.per_eta[j] = mean;
        res.per_eta_std_err[j] =
            std::sqrt(std::max(mean_sq - mean * mean, 0.0) / dn);
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < n_eta; ++j)
        if (res.per_eta[j] > res.per_eta[best]) best = j;
    res.best_eta = eta_grid[best];
    res.coverage = res.per_eta[best];
    res.std_err = res.per_eta_std_err[best];
    return res;
}

}  // namespace hetnet::sim
