#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hetnet/errors.hpp"
#include "hetnet/sim.hpp"
#include "sim/core.hpp"

namespace hetnet::sim {
namespace detail {
namespace {

constexpr double kTinySq = 1e-300;  // guards log(0) at coincident points

struct assoc_result {
    bs_ref bs;
    double own_power = 0.0;
};

point uniform_point(std::mt19937_64& rng, double side) {
    const double x = side * (uniform01(rng) - 0.5);
    const double y = side * (uniform01(rng) - 0.5);
    return {x, y};
}

int nearest(const point& pos, const std::vector<point>& bss, double side,
            bool toroidal, double& best_sq) {
    best_sq = std::numeric_limits<double>::infinity();
    int best = -1;
    for (int i = 0; i < static_cast<int>(bss.size()); ++i) {
        const double d = dist_sq(pos, bss[i], side, toroidal);
        if (d < best_sq) {
            best_sq = d;
            best = i;
        }
    }
    return best;
}

// Max-received-power rule over the nearest candidate of each tier,
// evaluated in the log domain so extreme distances cannot overflow.
assoc_result associate(const point& pos, const geometry& g,
                       const network_params& p, double side, bool toroidal) {
    double d1_sq = 0.0, d2_sq = 0.0;
    const int i1 = nearest(pos, g.macro, side, toroidal, d1_sq);
    const int i2 = nearest(pos, g.pico, side, toroidal, d2_sq);
    const double lp1 = std::log(p.macro_power) -
                       0.5 * p.macro_pathloss * std::log(std::max(d1_sq, kTinySq));
    const double lp2 = std::log(p.pico_power) -
                       0.5 * p.pico_pathloss * std::log(std::max(d2_sq, kTinySq));
    if (lp1 >= lp2) return {{tier::macro, i1}, std::exp(lp1)};
    return {{tier::pico, i2}, std::exp(lp2)};
}

// Serving power of an infinite-plane user conditioned on its serving
// tier. Max-power association involves only each tier's nearest BS,
// and the squared nearest distances are exponential, so the joint
// (tier, power) mark can be drawn exactly from two variates; the tier
// conditioning is realized by rejection (acceptance rate = the tier's
// association probability, bounded away from zero for valid
// parameters). The tie rule matches associate() above.
double conditional_serving_power(std::mt19937_64& rng,
                                 const network_params& p, tier want) {
    constexpr int max_tries = 1000000;
    for (int tries = 0; tries < max_tries; ++tries) {
        const double q1 = exp1(rng) / (kPi * p.macro_density);
        const double q2 = exp1(rng) / (kPi * p.pico_density);
        const double w1 =
            p.macro_power * std::pow(std::max(q1, kTinySq), -0.5 * p.macro_pathloss);
        const double w2 =
            p.pico_power * std::pow(std::max(q2, kTinySq), -0.5 * p.pico_pathloss);
        const tier t = w1 >= w2 ? tier::macro : tier::pico;
        if (t == want) return t == tier::macro ? w1 : w2;
    }
    throw simulation_error(
        "a tier's association probability is too small to sample its "
        "scheduled-user field");
}

}  // namespace

double dist_sq(const point& a, const point& b, double side, bool toroidal) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    if (toroidal) {
        if (dx > 0.5 * side) dx = side - dx;
        if (dy > 0.5 * side) dy = side - dy;
    }
    return dx * dx + dy * dy;
}

geometry sample_geometry(const network_params& p, const sim_options& opts,
                         std::uint64_t seed, std::uint64_t index) {
    const double side = opts.window_side;
    const double area = side * side;
    constexpr int max_attempts = 1000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto rng = purpose_stream(seed, index, tag_geometry, attempt);
        geometry g;
        g.attempts = attempt;
        const int n1 = poisson(rng, p.macro_density * area);
        const int n2 = poisson(rng, p.pico_density * area);
        if (n1 == 0 || n2 == 0) continue;  // degenerate: redraw everything
        g.macro.resize(n1);
        for (auto& pt : g.macro) pt = uniform_point(rng, side);
        g.pico.resize(n2);
        for (auto& pt : g.pico) pt = uniform_point(rng, side);

        if (opts.field == user_field::full) {
            const int nu = poisson(rng, p.user_density * area);
            g.users.resize(1 + nu);
            g.users[0] = point{0.0, 0.0};
            for (int i = 1; i <= nu; ++i) g.users[i] = uniform_point(rng, side);
        } else {
            g.users = {point{0.0, 0.0}};
        }

        g.assoc.resize(g.users.size());
        std::vector<double> upow(g.users.size());
        for (std::size_t i = 0; i < g.users.size(); ++i) {
            const auto a = associate(g.users[i], g, p, side, opts.toroidal);
            g.assoc[i] = a.bs;
            upow[i] = a.own_power;
        }
        const bs_ref serving = g.assoc[0];

        g.macro_sched.assign(n1, -1);
        g.pico_sched.assign(n2, -1);
        auto srng = purpose_stream(seed, index, tag_schedule, attempt);
        if (opts.field == user_field::full) {
            std::vector<std::vector<int>> m_users(n1), p_users(n2);
            for (int ui = 0; ui < static_cast<int>(g.users.size()); ++ui) {
                const bs_ref b = g.assoc[ui];
                if (b.t == tier::macro)
                    m_users[b.index].push_back(ui);
                else
                    p_users[b.index].push_back(ui);
            }
            auto pick = [&](const std::vector<int>& lst, bs_ref self) {
                if (self == serving) return 0;  // typical is forced
                if (lst.empty()) return -1;     // synthetic user keeps it active
                return lst[bounded(srng, lst.size())];
            };
            for (int l = 0; l < n1; ++l)
                g.macro_sched[l] = pick(m_users[l], {tier::macro, l});
            for (int k = 0; k < n2; ++k)
                g.pico_sched[k] = pick(p_users[k], {tier::pico, k});
        } else {
            if (serving.t == tier::macro)
                g.macro_sched[serving.index] = 0;
            else
                g.pico_sched[serving.index] = 0;
        }

        g.scheduled.push_back({g.users[0], serving, upow[0]});
        if (opts.field == user_field::full) {
            auto add_real = [&](int sched, bs_ref self) {
                if (sched > 0)  // 0 is the typical, already listed first
                    g.scheduled.push_back({g.users[sched], self, upow[sched]});
            };
            for (int l = 0; l < n1; ++l) add_real(g.macro_sched[l], {tier::macro, l});
            for (int k = 0; k < n2; ++k) add_real(g.pico_sched[k], {tier::pico, k});
        } else {
            // The analysis-matching field: scheduled users drawn directly
            // as two PPPs with the BS densities, independent of the
            // deployment, each carrying a serving power sampled from its
            // tier's infinite-plane conditional law. Their phantom server
            // is marked by index -1; the request rule replaces the
            // own-server exclusion with the dominance annulus for them.
            const int c1 = poisson(rng, p.macro_density * area);
            for (int i = 0; i < c1; ++i) {
                const point pos = uniform_point(rng, side);
                g.scheduled.push_back(
                    {pos, {tier::macro, -1},
                     conditional_serving_power(rng, p, tier::macro)});
            }
            const int c2 = poisson(rng, p.pico_density * area);
            for (int i = 0; i < c2; ++i) {
                const point pos = uniform_point(rng, side);
                g.scheduled.push_back(
                    {pos, {tier::pico, -1},
                     conditional_serving_power(rng, p, tier::pico)});
            }
        }
        return g;
    }
    throw simulation_error(
        "a tier stayed empty across every snapshot attempt; enlarge the "
        "window or the deployment densities");
}

std::vector<std::vector<int>> compute_requests(const geometry& g,
                                               const network_params& p,
                                               const sim_options& opts,
                                               double t1, double t2) {
    std::vector<std::vector<int>> req(g.macro.size());
    const double side = opts.window_side;
    for (int i = 0; i < static_cast<int>(g.scheduled.size()); ++i) {
        const auto& su = g.scheduled[i];
        const bool macro_user = su.serving.t == tier::macro;
        const double t = macro_user ? t1 : t2;
        // Serving-power dominance makes a strict sub-unity ratio
        // impossible, so the unit threshold requests nothing.
        if (t <= 1.0) continue;
        const double reach_sq =
            std::pow(t * p.macro_power / su.own_power, 2.0 / p.macro_pathloss);
        // Real users: the own server is excluded by index and serving-power
        // dominance already keeps every other macro outside the inner
        // radius. Phantom-served users (index -1) carry no realized server,
        // so dominance is imposed explicitly as the annulus lower edge.
        const bool synthetic = su.serving.index < 0;
        const double dom_sq =
            synthetic
                ? std::pow(p.macro_power / su.own_power, 2.0 / p.macro_pathloss)
                : 0.0;
        for (int l = 0; l < static_cast<int>(g.macro.size()); ++l) {
            if (macro_user && su.serving.index == l) continue;
            const double d_sq = dist_sq(su.pos, g.macro[l], side, opts.toroidal);
            if (d_sq >= dom_sq && d_sq < reach_sq) req[l].push_back(i);
        }
    }
    return req;
}

void shuffle_requests(std::vector<std::vector<int>>& requests,
                      std::mt19937_64& rng) {
    for (auto& lst : requests)
        for (std::size_t k = lst.size(); k > 1; --k)
            std::swap(lst[k - 1], lst[bounded(rng, k)]);
}

}  // namespace detail

int snapshot::typical_serving_nulls() const {
    const bs_ref s = typical_serving();
    if (s.t != tier::macro) return 0;
    return static_cast<int>(in_targets.at(s.index).size());
}

bool snapshot::macro_targets_typical(int ell) const {
    const auto& tgt = in_targets.at(ell);
    return std::find(tgt.begin(), tgt.end(), 0) != tgt.end();
}

snapshot sample_snapshot(const network_params& p, const in_config& cfg,
                         const sim_options& opts, std::uint64_t seed) {
    p.validate();
    cfg.validate(p);
    if (!(opts.window_side > 0.0))
        throw domain_error("window side must be positive");

    auto g = detail::sample_geometry(p, opts, seed, 0);
    auto requests =
        detail::compute_requests(g, p, opts, cfg.macro_threshold, cfg.pico_threshold);
    auto shuffled = requests;
    auto sel = detail::purpose_stream(
        seed, 0, detail::tag_selection,
        detail::threshold_tag(cfg.macro_threshold, cfg.pico_threshold));
    detail::shuffle_requests(shuffled, sel);

    snapshot s;
    s.params = p;
    s.cfg = cfg;
    s.opts = opts;
    s.macro_positions = std::move(g.macro);
    s.pico_positions = std::move(g.pico);
    s.user_positions = std::move(g.users);
    s.associations = std::move(g.assoc);
    s.macro_schedule = std::move(g.macro_sched);
    s.pico_schedule = std::move(g.pico_sched);
    s.scheduled = std::move(g.scheduled);
    s.in_requests = std::move(requests);
    s.resample_attempts = g.attempts;
    s.in_targets.resize(shuffled.size());
    for (std::size_t l = 0; l < shuffled.size(); ++l) {
        const std::size_t take =
            std::min<std::size_t>(cfg.max_in_dof, shuffled[l].size());
        s.in_targets[l].assign(shuffled[l].begin(), shuffled[l].begin() + take);
        std::sort(s.in_targets[l].begin(), s.in_targets[l].end());
    }
    return s;
}

void dump_snapshot(const snapshot& s, std::ostream& out) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out.precision(17);
    for (int i = 0; i < static_cast<int>(s.macro_positions.size()); ++i) {
        const auto& pt = s.macro_positions[i];
        out << "macro " << pt.x << ' ' << pt.y << " 1 " << i << ' '
            << (s.macro_schedule[i] >= 0 ? 1 : 0) << '\n';
    }
    for (int i = 0; i < static_cast<int>(s.pico_positions.size()); ++i) {
        const auto& pt = s.pico_positions[i];
        out << "pico " << pt.x << ' ' << pt.y << " 2 " << i << ' '
            << (s.pico_schedule[i] >= 0 ? 1 : 0) << '\n';
    }
    for (int u = 0; u < static_cast<int>(s.user_positions.size()); ++u) {
        const auto& pt = s.user_positions[u];
        const bs_ref b = s.associations[u];
        const int sched = b.t == tier::macro ? s.macro_schedule[b.index]
                                             : s.pico_schedule[b.index];
        out << "user " << pt.x << ' ' << pt.y << ' ' << static_cast<int>(b.t)
            << ' ' << b.index << ' ' << (sched == u ? 1 : 0) << '\n';
    }
    out.flags(flags);
    out.precision(prec);
}

}  // namespace hetnet::sim
