#ifndef HETNET_NUMERIC_QUADRATURE_HPP
#define HETNET_NUMERIC_QUADRATURE_HPP

#include <functional>

namespace hetnet::num {

struct quad_options {
    double rel_tol = 1.0e-11;
    double abs_tol = 1.0e-14;
    int max_intervals = 4000;
};

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval. Throws
// integration_error if the interval budget is exhausted before the
// error estimate meets max(abs_tol, rel_tol * |result|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const quad_options& opt = {});

// Semi-infinite integral of a decaying integrand: integral_0^inf f(t) dt
// where f eventually decays at least exponentially (our integrands carry
// an exp(-t) factor after the t = pi * lambda * y^2 substitution).
// The upper limit is found by scanning until f stays below
// cutoff_rel * running-max, then the finite integral is evaluated
// adaptively.
double integrate_decaying(const std::function<double(double)>& f,
                          double cutoff_rel = 1.0e-14,
                          const quad_options& opt = {});

} // namespace hetnet::num

#endif
