#ifndef HETNET_SIM_HPP
#define HETNET_SIM_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hetnet/coverage.hpp"
#include "hetnet/network.hpp"

// Snapshot Monte Carlo of the full two-tier downlink: Poisson
// deployments in a square window, max-received-power association, one
// scheduled user per BS, user-centric nulling requests and grants,
// ZFBF/MRT precoding, and the SIR of a typical user at the window
// center. Also hosts the resource-partition (blank-subframe) baseline
// used for scheme comparisons.
//
// Every routine that consumes randomness takes an explicit 64-bit seed
// and derives one substream per (realization, purpose), so results are
// reproducible bit-for-bit and independent of the number of workers.

namespace hetnet::sim {

// exact: draw per-link complex channel vectors and compute effective
//   gains from the actual precoders.
// distributional: draw the effective-gain laws directly (desired
//   Gamma(M,1), interfering Exp(1), nulled 0).
enum class channel_mode { exact, distributional };

// full: users form their own Poisson field and each BS schedules one
//   uniformly chosen associated user (a synthetic one if none).
// approximation: scheduled users are drawn directly as two per-tier
//   Poisson fields with the BS densities, independent of the
//   deployment, each carrying an independently sampled conditional
//   serving power — the idealized field the analytical chain assumes.
enum class user_field { full, approximation };

struct sim_options {
    double window_side = 240.0;  // square side, meters
    user_field field = user_field::full;
    bool toroidal = false;  // wrap-around distances instead of a hard edge
};

struct point {
    double x = 0.0;
    double y = 0.0;
};

struct bs_ref {
    tier t = tier::macro;
    int index = -1;
    friend bool operator==(const bs_ref&, const bs_ref&) = default;
};

// A request-issuing scheduled user. Entry 0 of snapshot::scheduled is
// always the typical user at the origin. In approximation mode the
// other entries carry a sampled serving tier and power but no realized
// server (serving.index = -1).
struct scheduled_user {
    point pos;
    bs_ref serving;
    double own_power = 0.0;  // P_j * Z^-alpha_j toward its serving BS
};

struct snapshot {
    network_params params;
    in_config cfg;
    sim_options opts;

    std::vector<point> macro_positions;
    std::vector<point> pico_positions;

    // Real users; entry 0 is the typical user at the origin. In
    // approximation mode only the typical user appears here.
    std::vector<point> user_positions;
    std::vector<bs_ref> associations;  // parallel to user_positions

    // Per BS: index into user_positions, or -1 for a synthetic user (a
    // BS with nobody associated stays active toward an isotropic
    // direction; synthetic users never issue requests).
    std::vector<int> macro_schedule;
    std::vector<int> pico_schedule;

    // Request-issuing scheduled users; entry 0 is the typical user.
    std::vector<scheduled_user> scheduled;

    // Per macro: requesters as indices into `scheduled`, and the
    // granted subset of size min(max_in_dof, K) chosen uniformly.
    std::vector<std::vector<int>> in_requests;
    std::vector<std::vector<int>> in_targets;

    int resample_attempts = 0;  // degenerate-geometry redraws

    bs_ref typical_serving() const { return associations.at(0); }
    // Number of users the typical user's serving BS nulls (0 when the
    // serving BS is a pico, which never nulls).
    int typical_serving_nulls() const;
    // True when macro ell grants a nulling request from the typical user.
    bool macro_targets_typical(int ell) const;
};

// Draws one snapshot: Poisson counts with means lambda * side^2,
// uniform positions, the typical user at the origin forced to be its
// serving BS's scheduled user, associations, schedules, requests, and
// uniform-random grant selection. Resamples (up to a bounded number of
// attempts) whenever a tier comes up empty, so both tiers are always
// populated; throws simulation_error if that bound is exhausted.
snapshot sample_snapshot(const network_params& p, const in_config& cfg,
                         const sim_options& opts, std::uint64_t seed);

// Zero-forcing beam for the user of rows[0] nulling the users of
// rows[1..]: the corresponding pseudo-inverse column, normalized.
// Reduces to rows[0]/|rows[0]| when there is nothing to null. Throws
// domain_error on shape errors (more rows than antennas, mismatched
// lengths) and simulation_error when the rows are numerically
// rank-deficient (a probability-zero event; redraw the channels).
std::vector<std::complex<double>>
zfbf_precoder(const std::vector<std::vector<std::complex<double>>>& rows);

// Effective per-link power gains for one snapshot: |h^dag f|^2 toward
// the typical user for the serving BS and every interferer. Macros
// that granted the typical user's request have (numerically) zero
// gain; in exact mode that falls out of the actual ZFBF beams.
struct channel_realization {
    channel_mode mode = channel_mode::distributional;
    double desired_gain = 0.0;
    std::vector<double> macro_gain;  // per macro; serving entry unused (0)
    std::vector<double> pico_gain;   // per pico; serving entry unused (0)
};

channel_realization draw_channels(const snapshot& s, channel_mode mode,
                                  std::uint64_t seed);

// Linear SIR of the typical user: received desired power over the sum
// of interference from every other BS, with transmit powers and
// per-tier path losses applied. Returns +infinity when the
// interference is exactly zero (e.g. every interferer nulled).
double typical_sir(const snapshot& s, const channel_realization& ch);

// Empirical coverage over a shared set of SIR samples: one realization
// yields one SIR compared against every beta, so the estimate is
// exactly non-increasing in beta. Deterministic for a fixed (seed,
// n_realizations) regardless of parallelism.
std::vector<coverage_result>
estimate_coverage(const network_params& p, const in_config& cfg,
                  const std::vector<double>& beta_grid, int n_realizations,
                  channel_mode mode, const sim_options& opts,
                  std::uint64_t seed);

// Shared-geometry sweep: every configuration sees the same deployment,
// user field, scheduling, and request randomness per realization, so
// differences across configurations carry low variance. Configurations
// sharing thresholds also share the grant shuffle, making grant sets
// nested across max_in_dof values. Channels come from an independent
// substream per configuration position, so entry k equals a standalone
// estimate_coverage run of cfgs[k] whenever k = 0, and is an equally
// valid estimate at any position. Result is indexed [config][beta].
std::vector<std::vector<coverage_result>>
estimate_coverage_grid(const network_params& p,
                       const std::vector<in_config>& cfgs,
                       const std::vector<double>& beta_grid,
                       int n_realizations, channel_mode mode,
                       const sim_options& opts, std::uint64_t seed);

// Resource-partition baseline: macros holding at least one request
// (same signal-to-individual-interference rule as nulling requests)
// transmit in the 1-eta resource fraction, every other BS in the eta
// fraction, and all beams are MRT. Coverage is measured at a typical
// resource unit, so the partition's cost is part of the metric: the
// user counts as covered when the unit belongs to its serving BS's
// fraction and its within-fraction SIR (co-fraction interferers only)
// clears beta, i.e. each class contributes its resource fraction
// times its SIR coverage. Small eta favors users of partitioned
// macros and large eta the rest; the grid argmax trades the two
// classes off (ties resolve to the first point). When no macro holds
// a request the partition collapses: every BS keeps the full
// resource, making the result eta-independent and equal to plain
// beamforming coverage.
struct abs_result {
    double coverage = 0.0;          // per_eta at the best split
    double std_err = 0.0;           // its standard error
    double best_eta = 0.0;
    std::vector<double> eta_grid;
    std::vector<double> per_eta;
    std::vector<double> per_eta_std_err;
};

abs_result abs_baseline_coverage(const network_params& p, double t1,
                                 double t2, double beta,
                                 const std::vector<double>& eta_grid,
                                 int n_realizations, const sim_options& opts,
                                 std::uint64_t seed);

// Flat text dump, one line per node:
//   kind x y assoc_tier assoc_index scheduled
// User lines carry their serving BS and whether they are that BS's
// scheduled user; BS lines carry their own tier/index and whether they
// serve a real (non-synthetic) user.
void dump_snapshot(const snapshot& s, std::ostream& out);

}  // namespace hetnet::sim

#endif
