#ifndef HETNET_COVERAGE_HPP
#define HETNET_COVERAGE_HPP

#include "hetnet/network.hpp"

// Analytical SIR coverage of the typical user under the user-centric
// nulling scheme. The conditional coverage given the serving distance
// factorizes into normalized Laplace-derivative factors of three
// independent interference fields: the potential-nuller macro annulus
// (thinned by the skip probability), the remaining macro field beyond
// the annulus, and the pico field. The factors are combined over all
// splits of the derivative order and integrated against the
// serving-distance density.

namespace hetnet {

enum class method { analytic, asymptotic_low, asymptotic_high, monte_carlo };

struct coverage_result {
    double beta = 0.0;  // linear SIR threshold
    double value = 0.0;
    double std_err = 0.0;  // zero for deterministic methods
    method how = method::analytic;
};

// Normalized n-th Laplace derivative factor of the thinned macro
// interference originating from the annulus [r_inner, r_outer]:
//   s^n E[I^n e^{-s I}] / E-normalization, always in [0, ..).
// n = 0 gives the Laplace transform itself. s >= 0, 0 <= r_inner <= r_outer.
double annulus_laplace_factor(const network_params& p, const in_config& cfg,
                              int n, double s, double r_inner, double r_outer);

// Same for the unthinned field of one tier outside radius r.
double tail_laplace_factor(const network_params& p, tier interferer_tier,
                           int n, double s, double r);

// Coverage conditioned on macro / pico association, and their
// association-weighted combination. beta is linear.
double coverage_macro(const network_params& p, const in_config& cfg, double beta);
double coverage_pico(const network_params& p, const in_config& cfg, double beta);
double coverage_overall(const network_params& p, const in_config& cfg, double beta);

// Outage 1 - coverage evaluated by direct summation of the derivative
// orders at and above the diversity order, so small-beta outage keeps
// full relative accuracy (1 - coverage_overall would cancel). Valid
// while the series converges within the partition-order budget; throws
// integration_error otherwise (use for beta well below 0 dB).
double outage_overall(const network_params& p, const in_config& cfg, double beta);

} // namespace hetnet

#endif
