#ifndef HETNET_DETAIL_MODEL_HPP
#define HETNET_DETAIL_MODEL_HPP

#include <cmath>

#include "hetnet/network.hpp"

// Shared per-tier geometry helpers. The serving-distance density of the
// tier the typical user associates with is, for own-tier density lam and
// competing tier (lam', P', a'),
//   f(y) = (2 pi lam / A) y exp(-pi lam y^2
//          - pi lam' (P'/P)^(2/a') y^(2 a/a'))
// and the substitution t = pi lam y^2 turns every integral against f
// into integral exp(-t - cross_coef t^cross_exp) (...) dt.

namespace hetnet::detail {

struct tier_view {
    double lam_own = 0.0, lam_other = 0.0;
    double a_own = 0.0, a_other = 0.0;
    double p_own = 0.0, p_other = 0.0;
};

inline tier_view view_of(const network_params& p, tier t) {
    if (t == tier::macro)
        return {p.macro_density, p.pico_density, p.macro_pathloss,
                p.pico_pathloss, p.macro_power, p.pico_power};
    return {p.pico_density, p.macro_density, p.pico_pathloss,
            p.macro_pathloss, p.pico_power, p.macro_power};
}

struct substitution {
    double cross_coef = 0.0;
    double cross_exp = 0.0;
    double y_sq_scale = 0.0;  // y^2 = y_sq_scale * t
};

inline substitution substitution_of(const tier_view& v) {
    constexpr double pi = 3.14159265358979323846;
    substitution s;
    s.cross_exp = v.a_own / v.a_other;
    s.cross_coef = pi * v.lam_other *
                   std::pow(v.p_other / v.p_own, 2.0 / v.a_other) /
                   std::pow(pi * v.lam_own, s.cross_exp);
    s.y_sq_scale = 1.0 / (pi * v.lam_own);
    return s;
}

inline double poisson_pmf(double mean, int k) {
    if (k < 0) return 0.0;
    if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

inline double poisson_cdf(double mean, int k) {
    if (k < 0) return 0.0;
    if (mean == 0.0) return 1.0;
    double term = std::exp(-mean);
    double sum = term;
    for (int i = 1; i <= k; ++i) {
        term *= mean / i;
        sum += term;
    }
    return std::min(sum, 1.0);
}

// Pr[min(max_dof, K) <= x] for K ~ Poisson(mean).
inline double capped_poisson_cdf(double mean, int max_dof, int x) {
    if (x < 0) return 0.0;
    if (x >= max_dof) return 1.0;
    return poisson_cdf(mean, x);
}

// E[min(max_dof / (K+1), 1)]: chance a tagged requester is granted when
// competing with K ~ Poisson(mean) peers for max_dof slots.
inline double grant_probability(double mean, int max_dof) {
    if (max_dof <= 0) return 0.0;
    if (mean == 0.0) return 1.0;
    const double head = poisson_cdf(mean, max_dof - 1);
    const double tail_over_mean = (1.0 - poisson_cdf(mean, max_dof)) / mean;
    const double p = head + max_dof * tail_over_mean;
    return std::min(1.0, std::max(0.0, p));
}

} // namespace hetnet::detail

#endif
