#include "hetnet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "hetnet/detail/model.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/numeric/kahan.hpp"
#include "hetnet/numeric/partitions.hpp"
#include "hetnet/numeric/special.hpp"

// Both expansions come from the same derivative bookkeeping as the exact
// engine: the n-th interference factor expands over partitions of n, and
// a product of three fields expands over 3-part compositions. At low
// threshold every serving-distance integral collapses to a moment
// E[Y^pow]; at high threshold the serving distance decouples and the
// radial integral produces a Gamma factor.

namespace hetnet {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct tier_ctx {
    detail::tier_view v;
    double assoc = 0.0;       // association probability of the own tier
    double n_own = 0.0;       // own-tier antenna count
    int antennas = 0;
    double t_own = 0.0;       // own-tier request threshold
};

tier_ctx make_ctx(const network_params& p, const in_config& cfg, tier t) {
    tier_ctx c;
    c.v = detail::view_of(p, t);
    auto [a1, a2] = association_probabilities(p);
    c.assoc = (t == tier::macro) ? a1 : a2;
    c.antennas = (t == tier::macro) ? p.macro_antennas : p.pico_antennas;
    c.n_own = c.antennas;
    c.t_own = (t == tier::macro) ? cfg.macro_threshold : cfg.pico_threshold;
    return c;
}

// ---------------------------------------------------------------- low SIR

// Per-tier coefficient of beta^(N_own - U_own) in the outage expansion.
// The macro field splits into the request annulus (interferers survive
// with the skip probability) and the untouched tail beyond it; the pico
// field is never asked to null. Each surviving derivative order a
// contributes a power-law block, and the serving-distance moment closes
// the integral.
double low_sir_tier_coefficient(const network_params& p, const in_config& cfg,
                                tier t) {
    const tier_ctx c = make_ctx(p, cfg, t);
    const double q1 = 2.0 / p.macro_pathloss;
    const double q2 = 2.0 / p.pico_pathloss;

    // Nulling shields the own-tier signal only when both thresholds are
    // active; the full DoF budget is then consumed with the probability
    // that the serving macro grants all of its max_in_dof slots.
    int dof_shift = 0;
    double prefactor = 1.0;
    if (t == tier::macro && cfg.macro_threshold > 1.0 &&
        cfg.pico_threshold > 1.0) {
        dof_shift = cfg.max_in_dof;
        prefactor = nulled_count_pmf(p, cfg, cfg.max_in_dof);
    }
    const int order = c.antennas - dof_shift;
    if (order <= 0) throw domain_error("asymptotics: nonpositive outage order");
    if (order > num::max_partition_order)
        throw domain_error("asymptotics: outage order exceeds partition table");

    const double skip = in_probability(p, cfg).skip;

    // Power-law block of one derivative order against each field.
    auto macro_base = [&](int a) {
        return q1 * kPi * p.macro_density / (a - q1) *
               std::pow(p.macro_power / c.v.p_own, q1);
    };
    auto pico_base = [&](int a) {
        return q2 * kPi * p.pico_density / (a - q2) *
               std::pow(p.pico_power / c.v.p_own, q2);
    };
    // Fraction of a macro block falling beyond the request window.
    auto tail_frac = [&](int a) { return std::pow(c.t_own, -(a - q1)); };

    std::map<std::pair<int, int>, double> moments;
    auto moment = [&](int macro_parts, int pico_parts) {
        auto key = std::make_pair(macro_parts, pico_parts);
        auto it = moments.find(key);
        if (it != moments.end()) return it->second;
        const double pow_y = 2.0 * c.v.a_own / p.macro_pathloss * macro_parts +
                             2.0 * c.v.a_own / p.pico_pathloss * pico_parts;
        const double m = serving_distance_moment(p, t, pow_y);
        moments.emplace(key, m);
        return m;
    };

    num::kahan_sum total;
    for (const auto& comp : num::enumerate_compositions3(order)) {
        for (const auto& m : num::enumerate_partitions(comp.n1)) {
            double annulus = m.inv_mult_factorial;
            for (std::size_t i = 0; i < m.counts.size(); ++i) {
                if (m.counts[i] == 0) continue;
                const int a = static_cast<int>(i) + 1;
                annulus *= std::pow(
                    macro_base(a) * skip * (1.0 - tail_frac(a)), m.counts[i]);
            }
            if (annulus == 0.0) continue;
            for (const auto& pt : num::enumerate_partitions(comp.n2)) {
                double mtail = pt.inv_mult_factorial;
                for (std::size_t i = 0; i < pt.counts.size(); ++i) {
                    if (pt.counts[i] == 0) continue;
                    const int a = static_cast<int>(i) + 1;
                    mtail *= std::pow(macro_base(a) * tail_frac(a),
                                      pt.counts[i]);
                }
                if (mtail == 0.0) continue;
                for (const auto& qt : num::enumerate_partitions(comp.n3)) {
                    double pico = qt.inv_mult_factorial;
                    for (std::size_t i = 0; i < qt.counts.size(); ++i) {
                        if (qt.counts[i] == 0) continue;
                        const int a = static_cast<int>(i) + 1;
                        pico *= std::pow(pico_base(a), qt.counts[i]);
                    }
                    if (pico == 0.0) continue;
                    total.add(annulus * mtail * pico *
                              moment(m.order + pt.order, qt.order));
                }
            }
        }
    }
    return prefactor * total.value();
}

// --------------------------------------------------------------- high SIR

// Shared shape of the leading high-threshold coverage coefficient. Each
// retained derivative order contributes a complete-beta block; the
// closing radial integral turns the combined field exponent into a
// Gamma factor. `combined_field` selects whether the cross tier joins
// the closing exponent (exact result for equal path-loss exponents) or
// is dropped from it (upper envelope for distinct exponents).
double high_sir_tier_coefficient(const network_params& p, const in_config& cfg,
                                 tier t, bool combined_field) {
    const tier_ctx c = make_ctx(p, cfg, t);
    const double a1 = p.macro_pathloss, a2 = p.pico_pathloss;
    const double q1 = 2.0 / a1, q2 = 2.0 / a2;

    auto macro_block = [&](int a) {
        return 2.0 * kPi / a1 * p.macro_density *
               std::pow(p.macro_power / c.v.p_own, q1) *
               num::beta_fn(1.0 + q1, a - q1);
    };
    auto pico_block = [&](int a) {
        return 2.0 * kPi / a2 * p.pico_density *
               std::pow(p.pico_power / c.v.p_own, q2) *
               num::beta_fn(1.0 + q2, a - q2);
    };

    const double q_own = 2.0 / c.v.a_own;
    double closing = 2.0 * kPi * c.v.lam_own / c.v.a_own *
                     num::beta_fn(q_own, 1.0 - q_own);
    if (combined_field) {
        const double q_other = 2.0 / c.v.a_other;
        closing += 2.0 * kPi * c.v.lam_other / c.v.a_other *
                   std::pow(c.v.p_other / c.v.p_own, q_other) *
                   num::beta_fn(q_other, 1.0 - q_other);
    }

    // Distribution of surviving DoF at the serving BS: the macro spends
    // min(max_in_dof, requests) antennas on nulling, the pico spends none.
    const double mean = mean_in_requests(p, cfg.macro_threshold,
                                         cfg.pico_threshold).total;
    auto weight = [&](int n) {
        if (t == tier::pico) return 1.0;
        return detail::capped_poisson_cdf(mean, cfg.max_in_dof,
                                          c.antennas - 1 - n);
    };

    num::kahan_sum total;
    for (int n = 0; n < c.antennas; ++n) {
        const double w_n = weight(n);
        if (w_n == 0.0) continue;
        for (int n2 = 0; n2 <= n; ++n2) {
            for (const auto& pt : num::enumerate_partitions(n2)) {
                double mpart = pt.inv_mult_factorial;
                for (std::size_t i = 0; i < pt.counts.size(); ++i) {
                    if (pt.counts[i] == 0) continue;
                    const int a = static_cast<int>(i) + 1;
                    mpart *= std::pow(macro_block(a), pt.counts[i]);
                }
                for (const auto& qt : num::enumerate_partitions(n - n2)) {
                    double qpart = qt.inv_mult_factorial;
                    for (std::size_t i = 0; i < qt.counts.size(); ++i) {
                        if (qt.counts[i] == 0) continue;
                        const int a = static_cast<int>(i) + 1;
                        qpart *= std::pow(pico_block(a), qt.counts[i]);
                    }
                    const double expo = c.v.a_own / a1 * pt.order +
                                        c.v.a_own / a2 * qt.order + 1.0;
                    total.add(w_n * mpart * qpart *
                              std::pow(closing, -expo) * std::tgamma(expo));
                }
            }
        }
    }
    return kPi * c.v.lam_own / c.assoc * total.value();
}

// Keep-only-the-zeroth-order lower envelope coefficient for distinct
// path-loss exponents.
double high_sir_tier_lower(const network_params& p, const in_config& cfg,
                           tier t) {
    const tier_ctx c = make_ctx(p, cfg, t);
    const double a_max = std::max(p.macro_pathloss, p.pico_pathloss);
    const double q_own = 2.0 / c.v.a_own, q_other = 2.0 / c.v.a_other;
    const double g = 2.0 * kPi * c.v.lam_own / c.v.a_own *
                         num::beta_fn(q_own, 1.0 - q_own) +
                     2.0 * kPi * c.v.lam_other / c.v.a_other *
                         std::pow(c.v.p_other / c.v.p_own, q_other) *
                         num::beta_fn(q_other, 1.0 - q_other);
    const double ratio = a_max / c.v.a_own;
    return kPi * c.v.lam_own * ratio / (c.assoc * c.v.a_own) *
           std::pow(g, -ratio) * std::tgamma(ratio);
}

} // namespace

outage_asymptote low_sir_outage(const network_params& p, const in_config& cfg) {
    p.validate();
    cfg.validate(p);
    outage_asymptote r;
    const bool active =
        cfg.macro_threshold > 1.0 && cfg.pico_threshold > 1.0;
    const int u_eff = active ? cfg.max_in_dof : 0;
    r.macro_order = p.macro_antennas - u_eff;
    r.pico_order = p.pico_antennas;
    r.macro_coefficient = low_sir_tier_coefficient(p, cfg, tier::macro);
    r.pico_coefficient = low_sir_tier_coefficient(p, cfg, tier::pico);
    const auto [assoc_macro, assoc_pico] = association_probabilities(p);
    r.order = std::min(r.macro_order, r.pico_order);
    r.coefficient = 0.0;
    if (r.macro_order <= r.pico_order)
        r.coefficient += assoc_macro * r.macro_coefficient;
    if (r.pico_order <= r.macro_order)
        r.coefficient += assoc_pico * r.pico_coefficient;
    return r;
}

int optimal_in_dof_low_sir(const network_params& p, double macro_threshold,
                           double pico_threshold) {
    p.validate();
    const int lean = p.macro_antennas - p.pico_antennas - 1;
    const int full = lean + 1;
    const auto [assoc_macro, assoc_pico] = association_probabilities(p);

    in_config cfg_lean{lean, macro_threshold, pico_threshold};
    cfg_lean.validate(p);
    const double lean_obj =
        assoc_pico * low_sir_tier_coefficient(p, cfg_lean, tier::pico);

    in_config cfg_full{full, macro_threshold, pico_threshold};
    cfg_full.validate(p);
    const double full_obj =
        assoc_macro * low_sir_tier_coefficient(p, cfg_full, tier::macro) +
        assoc_pico * low_sir_tier_coefficient(p, cfg_full, tier::pico);

    // With max_in_dof = lean the macro outage order beats the pico one,
    // so only the pico coefficient competes against the tied orders of
    // the full choice.
    return lean_obj < full_obj ? lean : full;
}

coverage_asymptote high_sir_equal(const network_params& p,
                                  const in_config& cfg) {
    p.validate();
    cfg.validate(p);
    if (p.macro_pathloss != p.pico_pathloss)
        throw domain_error(
            "high_sir_equal requires equal path-loss exponents");
    coverage_asymptote r;
    r.order = -2.0 / p.macro_pathloss;
    r.macro_coefficient = high_sir_tier_coefficient(p, cfg, tier::macro, true);
    r.pico_coefficient = high_sir_tier_coefficient(p, cfg, tier::pico, true);
    const auto [assoc_macro, assoc_pico] = association_probabilities(p);
    r.coefficient = assoc_macro * r.macro_coefficient +
                    assoc_pico * r.pico_coefficient;
    return r;
}

coverage_bounds high_sir_bounds(const network_params& p,
                                const in_config& cfg) {
    p.validate();
    cfg.validate(p);
    if (p.macro_pathloss == p.pico_pathloss)
        throw domain_error(
            "high_sir_bounds requires distinct path-loss exponents");
    coverage_bounds r;
    const double a_max = std::max(p.macro_pathloss, p.pico_pathloss);
    const double a_min = std::min(p.macro_pathloss, p.pico_pathloss);
    r.upper_order = -2.0 / a_max;
    r.lower_order = -2.0 / a_min;
    r.macro_upper = high_sir_tier_coefficient(p, cfg, tier::macro, false);
    r.pico_upper = high_sir_tier_coefficient(p, cfg, tier::pico, false);
    r.macro_lower = high_sir_tier_lower(p, cfg, tier::macro);
    r.pico_lower = high_sir_tier_lower(p, cfg, tier::pico);
    // The tier with the heavier path loss decays slowest and owns both
    // overall envelopes.
    const bool macro_heavy = p.macro_pathloss > p.pico_pathloss;
    r.upper_coefficient = macro_heavy ? r.macro_upper : r.pico_upper;
    r.lower_coefficient = macro_heavy ? r.macro_lower : r.pico_lower;
    return r;
}

int optimal_in_dof_high_sir(const network_params& p, double macro_threshold,
                            double pico_threshold) {
    p.validate();
    const bool equal = p.macro_pathloss == p.pico_pathloss;
    int best_u = 0;
    double best = -1.0;
    for (int u = 0; u < p.macro_antennas; ++u) {
        in_config cfg{u, macro_threshold, pico_threshold};
        cfg.validate(p);
        const double coef = equal
                                ? high_sir_equal(p, cfg).coefficient
                                : high_sir_bounds(p, cfg).upper_coefficient;
        if (coef > best) {
            best = coef;
            best_u = u;
        }
    }
    return best_u;
}

} // namespace hetnet
