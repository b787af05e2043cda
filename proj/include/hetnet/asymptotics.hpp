#ifndef HETNET_ASYMPTOTICS_HPP
#define HETNET_ASYMPTOTICS_HPP

#include "hetnet/network.hpp"

// Closed-form expansions of the coverage/outage probability at the two
// ends of the SIR-threshold axis, plus the max-DoF choices they imply.

namespace hetnet {

struct outage_asymptote {
    // outage_j ~ coefficient_j * beta^order_j as beta -> 0.
    double macro_coefficient = 0.0;
    double pico_coefficient = 0.0;
    int macro_order = 0;
    int pico_order = 0;
    // Overall outage ~ coefficient * beta^order; the slower tier owns
    // the limit, both contribute when their orders tie.
    double coefficient = 0.0;
    int order = 0;
};

// Vanishing-threshold outage expansion. The macro order is
// macro_antennas - max_in_dof when both request thresholds exceed 1
// (nulling then has positive probability of consuming the full DoF
// budget at the serving BS) and macro_antennas otherwise.
outage_asymptote low_sir_outage(const network_params& p, const in_config& cfg);

// Max nulling DoF minimizing the asymptotic outage for vanishing
// threshold: either pico_antennas or pico_antennas + 1 DoF are kept for
// the macro's own user, i.e. the result is macro_antennas -
// pico_antennas - 1 or macro_antennas - pico_antennas.
int optimal_in_dof_low_sir(const network_params& p, double macro_threshold,
                           double pico_threshold);

struct coverage_asymptote {
    // coverage_j ~ coefficient_j * beta^order (order = -2/alpha < 0).
    double macro_coefficient = 0.0;
    double pico_coefficient = 0.0;
    double coefficient = 0.0;  // association-weighted overall
    double order = 0.0;
};

// Diverging-threshold coverage expansion; requires equal path-loss
// exponents (throws domain_error otherwise).
coverage_asymptote high_sir_equal(const network_params& p, const in_config& cfg);

struct coverage_bounds {
    // Envelope for unequal exponents: asymptotically
    //   lower_coefficient * beta^lower_order < coverage
    //     < upper_coefficient * beta^upper_order,
    // with upper_order = -2/alpha_max and lower_order = -2/alpha_min.
    double upper_coefficient = 0.0;
    double upper_order = 0.0;
    double lower_coefficient = 0.0;
    double lower_order = 0.0;
    // Per-tier ingredients (macro/pico upper share the overall orders,
    // the per-tier lower orders are -2 alpha_max / (alpha_j alpha_min)).
    double macro_upper = 0.0;
    double pico_upper = 0.0;
    double macro_lower = 0.0;
    double pico_lower = 0.0;
};

// Diverging-threshold coverage envelope; requires distinct path-loss
// exponents (throws domain_error when they are equal).
coverage_bounds high_sir_bounds(const network_params& p, const in_config& cfg);

// Max nulling DoF maximizing the asymptotic coverage (the upper
// envelope coefficient when the exponents differ) for diverging
// threshold. Evaluates the coefficient over the full DoF range.
int optimal_in_dof_high_sir(const network_params& p, double macro_threshold,
                            double pico_threshold);

} // namespace hetnet

#endif
