#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>

#include "hetnet/errors.hpp"
#include "hetnet/sim.hpp"
#include "sim/core.hpp"

namespace hetnet::sim {
namespace {

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

cvec to_eigen(const std::vector<std::complex<double>>& v) {
    return Eigen::Map<const cvec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Beam for row 0 nulling rows 1..: the column of the pseudo-inverse
// H^dag (H H^dag)^-1 belonging to the served user, normalized. H has
// the conjugated channel vectors as rows so that H f picks out the
// effective gains h_i^dag f.
cvec zf_beam(const cmat& rows) {
    const auto r = rows.rows();
    if (r == 1) return rows.row(0).transpose().normalized();
    const cmat h = rows.conjugate();
    const cmat gram = h * h.adjoint();
    Eigen::FullPivLU<cmat> lu(gram);
    if (!lu.isInvertible())
        throw simulation_error(
            "channel rows are numerically rank-deficient; redraw the fading");
    cvec e0 = cvec::Zero(r);
    e0(0) = 1.0;
    const cvec w = h.adjoint() * lu.solve(e0);
    const double norm = w.norm();
    if (!(norm > 0.0))
        throw simulation_error(
            "zero-forcing beam collapsed to zero; redraw the fading");
    return w / norm;
}

cvec draw_cn(std::mt19937_64& rng, int n) {
    cvec v(n);
    detail::fill_cn(rng, v.data(), n);
    return v;
}

double gain_between(const cvec& channel, const cvec& beam) {
    const std::complex<double> inner = channel.dot(beam);  // conjugates channel
    return std::norm(inner);
}

}  // namespace

std::vector<std::complex<double>>
zfbf_precoder(const std::vector<std::vector<std::complex<double>>>& rows) {
    if (rows.empty()) throw domain_error("precoder needs a served-user row");
    const std::size_t n = rows[0].size();
    if (n == 0) throw domain_error("channel vectors must be non-empty");
    if (rows.size() > n)
        throw domain_error("cannot null more users than antennas minus one");
    cmat h(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n)
            throw domain_error("channel rows must share one length");
        h.row(static_cast<Eigen::Index>(i)) = to_eigen(rows[i]).transpose();
    }
    const cvec f = zf_beam(h);
    return {f.data(), f.data() + f.size()};
}

channel_realization draw_channels(const snapshot& s, channel_mode mode,
                                  std::uint64_t seed) {
    const network_params& p = s.params;
    const bs_ref serving = s.typical_serving();
    const int n_macro = static_cast<int>(s.macro_positions.size());
    const int n_pico = static_cast<int>(s.pico_positions.size());

    channel_realization ch;
    ch.mode = mode;
    ch.macro_gain.assign(n_macro, 0.0);
    ch.pico_gain.assign(n_pico, 0.0);

    auto rng = detail::purpose_stream(seed, 0, detail::tag_channel, 0);

    if (mode == channel_mode::distributional) {
        const int m = serving.t == tier::macro
                          ? p.macro_antennas - s.typical_serving_nulls()
                          : p.pico_antennas;
        ch.desired_gain = detail::gamma_int(rng, m);
        for (int l = 0; l < n_macro; ++l) {
            if (serving.t == tier::macro && serving.index == l) continue;
            if (s.macro_targets_typical(l)) continue;  // nulled: exact zero
            ch.macro_gain[l] = detail::exp1(rng);
        }
        for (int k = 0; k < n_pico; ++k) {
            if (serving.t == tier::pico && serving.index == k) continue;
            ch.pico_gain[k] = detail::exp1(rng);
        }
        return ch;
    }

    // Exact mode: realize every involved vector and apply the actual
    // beams. A macro's zero-forcing rows are the channels toward its
    // own scheduled user (synthetic ones included) and its granted
    // requesters; when the typical user is among the latter, the very
    // vector carrying interference to the typical user appears as a
    // row, so the realized gain vanishes to numerical precision.
    const int n1 = p.macro_antennas;
    const int n2 = p.pico_antennas;

    // Serving BS first: desired channel plus its nulled users' rows.
    {
        const int dim = serving.t == tier::macro ? n1 : n2;
        const cvec h0 = draw_cn(rng, dim);
        cvec f;
        if (serving.t == tier::macro) {
            const auto& tgt = s.in_targets[serving.index];
            cmat rows(1 + static_cast<Eigen::Index>(tgt.size()), dim);
            rows.row(0) = h0.transpose();
            for (std::size_t i = 0; i < tgt.size(); ++i)
                rows.row(1 + static_cast<Eigen::Index>(i)) =
                    draw_cn(rng, dim).transpose();
            f = zf_beam(rows);
        } else {
            f = zf_beam(h0.transpose());
        }
        ch.desired_gain = gain_between(h0, f);
    }

    for (int l = 0; l < n_macro; ++l) {
        if (serving.t == tier::macro && serving.index == l) continue;
        const cvec g0 = draw_cn(rng, n1);  // channel toward the typical user
        const auto& tgt = s.in_targets[l];
        cmat rows(1 + static_cast<Eigen::Index>(tgt.size()), n1);
        rows.row(0) = draw_cn(rng, n1).transpose();  // own scheduled user
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            if (tgt[i] == 0)  // the typical user's own request was granted
                rows.row(1 + static_cast<Eigen::Index>(i)) = g0.transpose();
            else
                rows.row(1 + static_cast<Eigen::Index>(i)) =
                    draw_cn(rng, n1).transpose();
        }
        ch.macro_gain[l] = gain_between(g0, zf_beam(rows));
    }

    for (int k = 0; k < n_pico; ++k) {
        if (serving.t == tier::pico && serving.index == k) continue;
        const cvec g0 = draw_cn(rng, n2);
        const cvec own = draw_cn(rng, n2);
        ch.pico_gain[k] = gain_between(g0, zf_beam(own.transpose()));
    }
    return ch;
}

double typical_sir(const snapshot& s, const channel_realization& ch) {
    const network_params& p = s.params;
    const bs_ref serving = s.typical_serving();
    const double side = s.opts.window_side;
    const bool wrap = s.opts.toroidal;
    const point origin{0.0, 0.0};

    const auto received = [&](tier t, const point& pos, double gain) {
        const double d_sq =
            std::max(detail::dist_sq(origin, pos, side, wrap), 1e-300);
        const double power = t == tier::macro ? p.macro_power : p.pico_power;
        const double alpha = t == tier::macro ? p.macro_pathloss : p.pico_pathloss;
        return power * std::pow(d_sq, -0.5 * alpha) * gain;
    };

    const point serving_pos = serving.t == tier::macro
                                  ? s.macro_positions[serving.index]
                                  : s.pico_positions[serving.index];
    const double desired = received(serving.t, serving_pos, ch.desired_gain);

    double interference = 0.0;
    for (int l = 0; l < static_cast<int>(s.macro_positions.size()); ++l) {
        if (serving.t == tier::macro && serving.index == l) continue;
        interference += received(tier::macro, s.macro_positions[l], ch.macro_gain[l]);
    }
    for (int k = 0; k < static_cast<int>(s.pico_positions.size()); ++k) {
        if (serving.t == tier::pico && serving.index == k) continue;
        interference += received(tier::pico, s.pico_positions[k], ch.pico_gain[k]);
    }
    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return desired / interference;
}

}  // namespace hetnet::sim
