#ifndef HETNET_NETWORK_HPP
#define HETNET_NETWORK_HPP

#include <utility>

// Two-tier downlink model: macro-BSs (tier 1) and pico-BSs (tier 2) form
// independent homogeneous PPPs, users associate with the BS of maximum
// average received power, and each scheduled user asks the interfering
// macro-BSs whose signal-to-individual-interference ratio falls below a
// threshold to null their beam toward it. A macro-BS grants at most
// `max_in_dof` such requests per slot, picking victims uniformly when
// oversubscribed.

namespace hetnet {

enum class tier : int { macro = 1, pico = 2 };

struct network_params {
    double macro_density = 0.0;   // BS / m^2
    double pico_density = 0.0;    // BS / m^2
    double user_density = 0.01;   // users / m^2 (simulator only)
    double macro_power = 1.0;     // linear transmit power, only the
    double pico_power = 1.0;      // macro/pico ratio enters any formula
    int macro_antennas = 0;
    int pico_antennas = 0;
    double macro_pathloss = 0.0;  // exponents, must be > 2
    double pico_pathloss = 0.0;

    double power_ratio() const { return macro_power / pico_power; }
    // Throws domain_error when any constraint fails (densities > 0,
    // exponents > 2, macro_antennas > pico_antennas >= 1).
    void validate() const;
};

struct in_config {
    int max_in_dof = 0;            // in [0, macro_antennas - 1]
    double macro_threshold = 1.0;  // >= 1
    double pico_threshold = 1.0;   // >= 1

    void validate(const network_params& p) const;
};

// (Pr[serving BS is macro], Pr[serving BS is pico]); sums to 1.
std::pair<double, double> association_probabilities(const network_params& p);

// Density of the serving-BS distance conditioned on association with
// the given tier.
double serving_distance_pdf(const network_params& p, tier t, double y);

// E[Y^power] under serving_distance_pdf. Used by the low-SIR expansion.
double serving_distance_moment(const network_params& p, tier t, double power);

struct mean_requests {
    double from_macro_users = 0.0;
    double from_pico_users = 0.0;
    double total = 0.0;
};

// Mean number of nulling requests a macro-BS receives per slot, split by
// the requester's tier. Zero at thresholds equal to 1.
mean_requests mean_in_requests(const network_params& p, double macro_threshold,
                               double pico_threshold);

// Poisson pmf of the per-macro-BS request count implied by treating the
// scheduled users of each tier as independent PPPs.
double request_count_pmf(const network_params& p, double macro_threshold,
                         double pico_threshold, int k);

// pmf of the number of users a macro-BS actually nulls,
// min(max_in_dof, request count).
double nulled_count_pmf(const network_params& p, const in_config& cfg, int u);

struct nulling_probability {
    double select = 0.0;  // Pr[a tagged requester is granted]
    double skip = 0.0;    // 1 - select
};

// Probability that a macro-BS receiving a request from the typical user
// selects it, averaging the uniform victim choice over the Poisson
// request count.
nulling_probability in_probability(const network_params& p, const in_config& cfg);

} // namespace hetnet

#endif
