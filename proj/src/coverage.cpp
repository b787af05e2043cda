#include "hetnet/coverage.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hetnet/detail/model.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/numeric/kahan.hpp"
#include "hetnet/numeric/partitions.hpp"
#include "hetnet/numeric/quadrature.hpp"
#include "hetnet/numeric/special.hpp"

namespace hetnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

// B'(a, b, z) extended to the z -> 0 endpoint (complete beta).
double comp_beta(double a, double b, double z) {
    if (z <= 0.0) return num::beta_fn(a, b);
    if (z >= 1.0) return 0.0;
    return num::comp_incomplete_beta(a, b, z);
}

// One interference field enters through scaled incomplete-beta blocks:
// the order-0 block drives the exponential and block a the a-th
// derivative. For an annulus the blocks are differences between the
// inner and outer z-arguments (inner z <= outer z, so all blocks stay
// nonnegative); for a tail field the outer argument is absent.
struct field_blocks {
    double b0 = 0.0;
    std::vector<double> ba;  // ba[a-1], a = 1..n_cap
};

field_blocks make_blocks(double alpha, double z_in, double z_out, int n_cap) {
    field_blocks fb;
    const double q = 2.0 / alpha;
    fb.b0 = comp_beta(q, 1.0 - q, z_in) - comp_beta(q, 1.0 - q, z_out);
    fb.ba.resize(static_cast<std::size_t>(std::max(n_cap, 0)));
    for (int a = 1; a <= n_cap; ++a) {
        const double d = comp_beta(1.0 + q, a - q, z_in) -
                         comp_beta(1.0 + q, a - q, z_out);
        fb.ba[a - 1] = d;
    }
    // z_in <= z_out makes every difference nonnegative; anything beyond
    // rounding noise means the factor algebra is wrong.
    double floor = -1e-12 * num::beta_fn(1.0 + q, 1.0);
    for (double& d : fb.ba) {
        if (d < floor)
            throw consistency_error("make_blocks: negative beta-block difference");
        if (d < 0.0) d = 0.0;
    }
    if (fb.b0 < floor)
        throw consistency_error("make_blocks: negative order-0 block");
    if (fb.b0 < 0.0) fb.b0 = 0.0;
    return fb;
}

field_blocks make_blocks_tail(double alpha, double z, int n_cap) {
    return make_blocks(alpha, z, 1.0, n_cap);
}

// poly[n][k] = sum over partitions of n with k parts of
//   (n! / prod m_a!) prod_a ba[a]^(m_a),
// so the normalized n-th derivative factor at scale X is
//   exp(-X b0) sum_k poly[n][k] X^k.
std::vector<std::vector<double>> build_poly(const field_blocks& fb, int n_cap) {
    std::vector<std::vector<double>> poly(static_cast<std::size_t>(n_cap) + 1);
    for (int n = 0; n <= n_cap; ++n) {
        poly[n].assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (const auto& part : num::enumerate_partitions(n)) {
            double prod = part.weight;
            for (int a = 1; a <= n && prod != 0.0; ++a) {
                const int m = part.counts[a - 1];
                for (int i = 0; i < m; ++i) prod *= fb.ba[a - 1];
            }
            poly[n][part.order] += prod;
        }
    }
    return poly;
}

// Evaluate all derivative factors of one field at scale X into out[0..n_cap].
void eval_factors(const std::vector<std::vector<double>>& poly, double b0,
                  double x, int n_cap, std::vector<double>& xpow,
                  std::vector<double>& out) {
    xpow[0] = 1.0;
    for (int k = 1; k <= n_cap; ++k) xpow[k] = xpow[k - 1] * x;
    const double damp = std::exp(-x * b0);
    for (int n = 0; n <= n_cap; ++n) {
        num::kahan_sum s;
        for (int k = 0; k <= n; ++k) s.add(poly[n][k] * xpow[k]);
        out[n] = damp * s.value();
    }
}

struct engine {
    detail::tier_view v;
    detail::substitution sub;
    double own_weight = 0.0;     // pdf normalizer (association weight)
    int n_cap = 0;               // highest derivative order evaluated
    // Scale coefficients: X_f(y) = coef[f] * y^exp_y[f].
    std::array<double, 3> coef{};    // 0: nulled annulus, 1: macro tail, 2: pico field
    std::array<double, 3> exp_y{};
    std::array<double, 3> b0{};
    std::array<std::vector<std::vector<double>>, 3> poly;
    std::vector<double> comp_weight_cache;  // unused slot keeper

    // Workspaces for the integrand (single-threaded per engine instance).
    mutable std::array<std::vector<double>, 3> factors;
    mutable std::vector<double> xpow;

    void eval_all(double y) const {
        for (int f = 0; f < 3; ++f) {
            const double x = coef[f] * std::pow(y, exp_y[f]);
            eval_factors(poly[f], b0[f], x, n_cap, xpow, factors[f]);
        }
    }
};

engine make_engine(const network_params& p, const in_config& cfg, double beta,
                   tier t, int n_cap) {
    p.validate();
    cfg.validate(p);
    if (!(beta > 0.0)) throw domain_error("coverage: beta must be > 0 (linear)");

    engine e;
    e.v = detail::view_of(p, t);
    e.sub = detail::substitution_of(e.v);
    e.own_weight = num::integrate_decaying([&](double u) {
        return std::exp(-u - e.sub.cross_coef * std::pow(u, e.sub.cross_exp));
    });
    e.n_cap = n_cap;

    const double t_own =
        (t == tier::macro) ? cfg.macro_threshold : cfg.pico_threshold;
    const double skip = in_probability(p, cfg).skip;

    // All incomplete-beta arguments are distance-free: the annulus spans
    // z in [1/(1+beta), 1/(1+beta/T)], the macro tail starts at the
    // annulus edge and the pico field at the association boundary.
    const double z_in = 1.0 / (1.0 + beta);
    const double z_out = 1.0 / (1.0 + beta / t_own);
    const double a1 = p.macro_pathloss;
    const double a2 = p.pico_pathloss;

    const field_blocks annulus = make_blocks(a1, z_in, z_out, n_cap);
    const field_blocks macro_tail = make_blocks_tail(a1, z_out, n_cap);
    const field_blocks pico_field = make_blocks_tail(a2, z_in, n_cap);

    e.coef[0] = skip * (2.0 * kPi / a1) * p.macro_density *
                std::pow(beta * p.macro_power / e.v.p_own, 2.0 / a1);
    e.coef[1] = (2.0 * kPi / a1) * p.macro_density *
                std::pow(beta * p.macro_power / e.v.p_own, 2.0 / a1);
    e.coef[2] = (2.0 * kPi / a2) * p.pico_density *
                std::pow(beta * p.pico_power / e.v.p_own, 2.0 / a2);
    e.exp_y[0] = e.exp_y[1] = 2.0 * e.v.a_own / a1;
    e.exp_y[2] = 2.0 * e.v.a_own / a2;
    e.b0 = {annulus.b0, macro_tail.b0, pico_field.b0};
    e.poly = {build_poly(annulus, n_cap), build_poly(macro_tail, n_cap),
              build_poly(pico_field, n_cap)};

    for (auto& f : e.factors) f.resize(static_cast<std::size_t>(n_cap) + 1);
    e.xpow.resize(static_cast<std::size_t>(n_cap) + 1);
    return e;
}

// Weighted sum over order splits: sum_n weight[n] *
//   sum_{n1+n2+n3=n} F0[n1] F1[n2] F2[n3] / (n1! n2! n3!).
double combine(const engine& e, const std::vector<double>& weight) {
    num::kahan_sum acc;
    const int n_max = static_cast<int>(weight.size()) - 1;
    for (int n1 = 0; n1 <= n_max; ++n1) {
        const double f1 = e.factors[0][n1] / num::factorial(n1);
        if (f1 == 0.0) continue;
        for (int n2 = 0; n2 + n1 <= n_max; ++n2) {
            const double f12 = f1 * e.factors[1][n2] / num::factorial(n2);
            if (f12 == 0.0) continue;
            for (int n3 = 0; n1 + n2 + n3 <= n_max; ++n3) {
                const double w = weight[n1 + n2 + n3];
                if (w == 0.0) continue;
                const double term =
                    w * f12 * e.factors[2][n3] / num::factorial(n3);
                if (term < 0.0)
                    throw consistency_error("coverage: negative series term");
                acc.add(term);
            }
        }
    }
    return acc.value();
}

// Point where the combined exponential decay of the substituted
// integrand has lost one e-fold. At large beta (or extreme density or
// power imbalance) the decay terms squeeze the whole mass into a spike
// near zero that unit integration steps would jump over; integrating in
// units of this step keeps the spike resolved.
double efold_step(const engine& e) {
    auto decay = [&](double t) {
        double g = t + e.sub.cross_coef * std::pow(t, e.sub.cross_exp);
        for (int f = 0; f < 3; ++f)
            g += e.coef[f] * std::pow(e.sub.y_sq_scale * t, e.exp_y[f] / 2.0) *
                 e.b0[f];
        return g;
    };
    // Bracket: the smallest single-term e-fold point already puts the
    // full decay at or above one, so it is a log-scale-safe upper end.
    double hi = 1.0;
    if (e.sub.cross_coef > 1.0)
        hi = std::min(hi, std::pow(e.sub.cross_coef, -1.0 / e.sub.cross_exp));
    for (int f = 0; f < 3; ++f) {
        const double c =
            e.coef[f] * std::pow(e.sub.y_sq_scale, e.exp_y[f] / 2.0) * e.b0[f];
        if (c > 1.0) hi = std::min(hi, std::pow(c, -2.0 / e.exp_y[f]));
    }
    double lo = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (decay(mid) > 1.0 ? hi : lo) = mid;
    }
    return hi;
}

// Conditional coverage for one tier: the order weights W[n] fold the
// nulled-count distribution into the order cap (macro antennas minus
// nulled users for tier 1, a fixed cap for tier 2).
double conditional_coverage(const network_params& p, const in_config& cfg,
                            double beta, tier t) {
    const int antennas =
        (t == tier::macro) ? p.macro_antennas : p.pico_antennas;
    const int n_cap = antennas - 1;
    const engine e = make_engine(p, cfg, beta, t, n_cap);

    std::vector<double> weight(static_cast<std::size_t>(n_cap) + 1, 1.0);
    if (t == tier::macro) {
        const double mean =
            mean_in_requests(p, cfg.macro_threshold, cfg.pico_threshold).total;
        for (int n = 0; n <= n_cap; ++n)
            weight[n] = detail::capped_poisson_cdf(mean, cfg.max_in_dof,
                                                   p.macro_antennas - 1 - n);
    }

    const double step = efold_step(e);
    const double integral = num::integrate_decaying([&](double u) {
        const double t = step * u;
        const double y = std::sqrt(e.sub.y_sq_scale * t);
        e.eval_all(y);
        return step * combine(e, weight) *
               std::exp(-t - e.sub.cross_coef * std::pow(t, e.sub.cross_exp));
    });
    return integral / e.own_weight;
}

// Conditional outage by direct summation of orders at and above the
// diversity order; each order is integrated separately and the series
// is cut when its relative contribution drops below 1e-9.
double conditional_outage(const network_params& p, const in_config& cfg,
                          double beta, tier t) {
    const int antennas =
        (t == tier::macro) ? p.macro_antennas : p.pico_antennas;
    const int first_order =
        (t == tier::macro) ? antennas - cfg.max_in_dof : antennas;

    const double mean =
        mean_in_requests(p, cfg.macro_threshold, cfg.pico_threshold).total;
    auto order_weight = [&](int n) {
        if (t == tier::pico) return n >= antennas ? 1.0 : 0.0;
        // Pr[nulled count >= antennas - n].
        return 1.0 - detail::capped_poisson_cdf(mean, cfg.max_in_dof,
                                                antennas - n - 1);
    };

    const engine e = make_engine(p, cfg, beta, t, num::max_partition_order);

    double total = 0.0;
    int consecutive_small = 0;
    double last_rel = 1.0;
    for (int n = first_order; n <= num::max_partition_order; ++n) {
        const double w = order_weight(n);
        std::vector<double> weight(static_cast<std::size_t>(n) + 1, 0.0);
        weight[n] = w;
        double contribution = 0.0;
        if (w > 0.0) {
            const double step = efold_step(e);
            contribution = num::integrate_decaying([&](double u) {
                const double t = step * u;
                const double y = std::sqrt(e.sub.y_sq_scale * t);
                e.eval_all(y);
                return step * combine(e, weight) *
                       std::exp(-t -
                                e.sub.cross_coef * std::pow(t, e.sub.cross_exp));
            });
        }
        total += contribution;
        last_rel = (total > 0.0) ? contribution / total : 1.0;
        consecutive_small = (last_rel < 1e-9) ? consecutive_small + 1 : 0;
        if (consecutive_small >= 2) break;
    }
    if (last_rel > 1e-6)
        throw integration_error(
            "outage series did not converge within the order budget; "
            "use it only for thresholds well below 0 dB");
    return total / e.own_weight;
}

} // namespace

double annulus_laplace_factor(const network_params& p, const in_config& cfg,
                              int n, double s, double r_inner, double r_outer) {
    p.validate();
    cfg.validate(p);
    if (n < 0) throw domain_error("annulus_laplace_factor: n must be >= 0");
    if (!(s >= 0.0)) throw domain_error("annulus_laplace_factor: s must be >= 0");
    if (!(r_inner > 0.0) || !(r_outer >= r_inner))
        throw domain_error("annulus_laplace_factor: requires 0 < r_inner <= r_outer");
    if (s == 0.0) return n == 0 ? 1.0 : 0.0;

    const double a1 = p.macro_pathloss;
    const double z_in = 1.0 / (1.0 + s * std::pow(r_inner, -a1));
    const double z_out = 1.0 / (1.0 + s * std::pow(r_outer, -a1));
    const field_blocks fb = make_blocks(a1, z_in, z_out, n);
    const auto poly = build_poly(fb, n);

    const double skip = in_probability(p, cfg).skip;
    const double x =
        skip * (2.0 * kPi / a1) * p.macro_density * std::pow(s, 2.0 / a1);

    std::vector<double> xpow(static_cast<std::size_t>(n) + 1);
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    eval_factors(poly, fb.b0, x, n, xpow, out);
    return out[static_cast<std::size_t>(n)];
}

double tail_laplace_factor(const network_params& p, tier interferer_tier,
                           int n, double s, double r) {
    p.validate();
    if (n < 0) throw domain_error("tail_laplace_factor: n must be >= 0");
    if (!(s >= 0.0)) throw domain_error("tail_laplace_factor: s must be >= 0");
    if (!(r >= 0.0)) throw domain_error("tail_laplace_factor: r must be >= 0");
    if (s == 0.0) return n == 0 ? 1.0 : 0.0;

    const double alpha = (interferer_tier == tier::macro) ? p.macro_pathloss
                                                          : p.pico_pathloss;
    const double lam = (interferer_tier == tier::macro) ? p.macro_density
                                                        : p.pico_density;
    const double z = (r == 0.0) ? 0.0 : 1.0 / (1.0 + s * std::pow(r, -alpha));
    const field_blocks fb = make_blocks_tail(alpha, z, n);
    const auto poly = build_poly(fb, n);
    const double x = (2.0 * kPi / alpha) * lam * std::pow(s, 2.0 / alpha);

    std::vector<double> xpow(static_cast<std::size_t>(n) + 1);
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    eval_factors(poly, fb.b0, x, n, xpow, out);
    return out[static_cast<std::size_t>(n)];
}

double coverage_macro(const network_params& p, const in_config& cfg, double beta) {
    return conditional_coverage(p, cfg, beta, tier::macro);
}

double coverage_pico(const network_params& p, const in_config& cfg, double beta) {
    return conditional_coverage(p, cfg, beta, tier::pico);
}

double coverage_overall(const network_params& p, const in_config& cfg, double beta) {
    const auto [a1, a2] = association_probabilities(p);
    return a1 * coverage_macro(p, cfg, beta) + a2 * coverage_pico(p, cfg, beta);
}

double outage_overall(const network_params& p, const in_config& cfg, double beta) {
    const auto [a1, a2] = association_probabilities(p);
    return a1 * conditional_outage(p, cfg, beta, tier::macro) +
           a2 * conditional_outage(p, cfg, beta, tier::pico);
}

} // namespace hetnet
