#include "hetnet/network.hpp"

#include <cmath>
#include <string>

#include "hetnet/detail/model.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/numeric/quadrature.hpp"

namespace hetnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Point where the combined decay exp(-t - c t^e) has lost one e-fold.
// A huge cross coefficient (extreme density or power imbalance) pushes
// the whole mass into a spike near zero that unit integration steps
// would jump over; integrating in units of this step keeps the spike
// resolved.
double decay_step(const detail::substitution& sub) {
    const double c = sub.cross_coef, e = sub.cross_exp;
    double hi = 1.0;
    if (c > 1.0) hi = std::pow(c, -1.0 / e);  // cross term alone hits 1 here
    double lo = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid + c * std::pow(mid, e) > 1.0 ? hi : lo) = mid;
    }
    return hi;
}

// integral exp(-t - c t^e) dt: the association weight of a tier, equal
// to the probability the biased-power rule picks it.
double tier_weight(const detail::tier_view& v) {
    const auto sub = detail::substitution_of(v);
    const double step = decay_step(sub);
    return num::integrate_decaying([&](double u) {
        const double t = step * u;
        return step *
               std::exp(-t - sub.cross_coef * std::pow(t, sub.cross_exp));
    });
}

// integral y^power f_j(y) dy before dividing by the tier weight.
double unnormalized_moment(const detail::tier_view& v, double power) {
    const auto sub = detail::substitution_of(v);
    const double step = decay_step(sub);
    return num::integrate_decaying([&](double u) {
        const double t = step * u;
        return step * std::pow(sub.y_sq_scale * t, 0.5 * power) *
               std::exp(-t - sub.cross_coef * std::pow(t, sub.cross_exp));
    });
}

} // namespace

void network_params::validate() const {
    if (!(macro_density > 0.0) || !(pico_density > 0.0))
        throw domain_error("network_params: BS densities must be > 0");
    if (!(user_density > 0.0))
        throw domain_error("network_params: user density must be > 0");
    if (!(macro_power > 0.0) || !(pico_power > 0.0))
        throw domain_error("network_params: powers must be > 0");
    if (!(macro_pathloss > 2.0) || !(pico_pathloss > 2.0))
        throw domain_error("network_params: path-loss exponents must be > 2");
    if (pico_antennas < 1 || macro_antennas <= pico_antennas)
        throw domain_error("network_params: requires macro_antennas > pico_antennas >= 1");
}

void in_config::validate(const network_params& p) const {
    if (max_in_dof < 0 || max_in_dof > p.macro_antennas - 1)
        throw domain_error("in_config: max_in_dof must lie in [0, macro_antennas - 1]");
    if (!(macro_threshold >= 1.0) || !(pico_threshold >= 1.0))
        throw domain_error("in_config: thresholds must be >= 1");
}

std::pair<double, double> association_probabilities(const network_params& p) {
    p.validate();
    // Both weights are computed independently; their sum equals 1 only up
    // to quadrature accuracy, which downstream tests rely on as a check.
    return {tier_weight(detail::view_of(p, tier::macro)),
            tier_weight(detail::view_of(p, tier::pico))};
}

double serving_distance_pdf(const network_params& p, tier t, double y) {
    p.validate();
    if (!(y >= 0.0)) throw domain_error("serving_distance_pdf: y must be >= 0");
    const detail::tier_view v = detail::view_of(p, t);
    const auto sub = detail::substitution_of(v);
    const double cross =
        sub.cross_coef * std::pow(kPi * v.lam_own * y * y, sub.cross_exp);
    return 2.0 * kPi * v.lam_own / tier_weight(v) * y *
           std::exp(-kPi * v.lam_own * y * y - cross);
}

double serving_distance_moment(const network_params& p, tier t, double power) {
    p.validate();
    if (!(power >= 0.0))
        throw domain_error("serving_distance_moment: power must be >= 0");
    const detail::tier_view v = detail::view_of(p, t);
    return unnormalized_moment(v, power) / tier_weight(v);
}

mean_requests mean_in_requests(const network_params& p, double macro_threshold,
                               double pico_threshold) {
    p.validate();
    if (!(macro_threshold >= 1.0) || !(pico_threshold >= 1.0))
        throw domain_error("mean_in_requests: thresholds must be >= 1");

    // A scheduled tier-j user at distance r from a macro-BS requests a
    // null iff its serving distance lands in an r-dependent window.
    // Integrating the window over the user field first reduces each
    // tier's mean count to a serving-distance moment:
    //   macro users: pi lam1 (T1^(2/a1) - 1) E[Y1^2]
    //   pico users:  pi lam2 (P1/P2)^(2/a1) (T2^(2/a1) - 1) E[Y2^(2 a2/a1)]
    // Threshold 1 means an empty request window; skip the moment so a
    // degenerate tier (vanishing density) cannot turn 0 * inf into NaN.
    const double a1 = p.macro_pathloss;
    mean_requests r;
    if (macro_threshold > 1.0)
        r.from_macro_users = kPi * p.macro_density *
                             (std::pow(macro_threshold, 2.0 / a1) - 1.0) *
                             serving_distance_moment(p, tier::macro, 2.0);
    if (pico_threshold > 1.0)
        r.from_pico_users = kPi * p.pico_density *
                            std::pow(p.power_ratio(), 2.0 / a1) *
                            (std::pow(pico_threshold, 2.0 / a1) - 1.0) *
                            serving_distance_moment(p, tier::pico, 2.0 * p.pico_pathloss / a1);
    r.total = r.from_macro_users + r.from_pico_users;
    return r;
}

double request_count_pmf(const network_params& p, double macro_threshold,
                         double pico_threshold, int k) {
    if (k < 0) throw domain_error("request_count_pmf: k must be >= 0");
    return detail::poisson_pmf(
        mean_in_requests(p, macro_threshold, pico_threshold).total, k);
}

double nulled_count_pmf(const network_params& p, const in_config& cfg, int u) {
    cfg.validate(p);
    if (u < 0 || u > cfg.max_in_dof) return 0.0;
    const double mean =
        mean_in_requests(p, cfg.macro_threshold, cfg.pico_threshold).total;
    if (u < cfg.max_in_dof) return detail::poisson_pmf(mean, u);
    // All Poisson mass at or above the cap collapses onto u = max dof.
    return 1.0 - detail::poisson_cdf(mean, cfg.max_in_dof - 1);
}

nulling_probability in_probability(const network_params& p, const in_config& cfg) {
    cfg.validate(p);
    const double mean =
        mean_in_requests(p, cfg.macro_threshold, cfg.pico_threshold).total;
    nulling_probability out;
    out.select = detail::grant_probability(mean, cfg.max_in_dof);
    out.skip = 1.0 - out.select;
    return out;
}

} // namespace hetnet
