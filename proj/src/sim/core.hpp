#ifndef HETNET_SIM_CORE_HPP
#define HETNET_SIM_CORE_HPP

#include <cstdint>
#include <vector>

#include "hetnet/sim.hpp"
#include "sim/rng.hpp"

// Internal building blocks shared by the one-shot snapshot sampler and
// the batched coverage estimators. A `geometry` holds everything that
// is independent of the nulling configuration (deployment, users,
// association, schedules, request-issuing users); requests depend on
// the thresholds only and grants on the degree-of-freedom budget only,
// so configuration sweeps can reuse one geometry per realization.

namespace hetnet::sim::detail {

struct geometry {
    std::vector<point> macro, pico;
    std::vector<point> users;  // [0] typical at the origin
    std::vector<bs_ref> assoc;
    std::vector<int> macro_sched, pico_sched;
    std::vector<scheduled_user> scheduled;  // [0] typical
    int attempts = 0;
};

double dist_sq(const point& a, const point& b, double side, bool toroidal);

// Samples deployment, users, association, schedules, and the
// request-issuing scheduled-user list for realization `index`.
geometry sample_geometry(const network_params& p, const sim_options& opts,
                         std::uint64_t seed, std::uint64_t index);

// Requester lists per macro under the signal-to-individual-interference
// rule with thresholds (t1, t2). Deterministic given the geometry.
std::vector<std::vector<int>> compute_requests(const geometry& g,
                                               const network_params& p,
                                               const sim_options& opts,
                                               double t1, double t2);

// Uniformly shuffles each macro's requester list in place (macro order
// fixed), so that the first min(U, K) entries form a uniform subset
// for every U simultaneously.
void shuffle_requests(std::vector<std::vector<int>>& requests,
                      std::mt19937_64& rng);

}  // namespace hetnet::sim::detail

#endif
