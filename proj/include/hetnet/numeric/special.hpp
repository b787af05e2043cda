#ifndef HETNET_NUMERIC_SPECIAL_HPP
#define HETNET_NUMERIC_SPECIAL_HPP

// Complete and incomplete Euler integrals used throughout the coverage
// and asymptotics engines. All routines are plain double precision and
// target ~1e-12 relative accuracy on the parameter ranges that arise
// here (path-loss exponents > 2, hence beta/gamma arguments in (0, ~40)).

namespace hetnet::num {

// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a > 0, b > 0.
double beta_fn(double a, double b);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
// Domain: a > 0, b > 0, 0 <= x <= 1.
double reg_incomplete_beta(double a, double b, double x);

// Complementary incomplete beta
//   B'(a, b, z) = integral_z^1 u^(a-1) (1-u)^(b-1) du,  0 < z < 1.
// Evaluated as B(a, b) * I_{1-z}(b, a) so the z -> 1 tail keeps
// relative accuracy.
double comp_incomplete_beta(double a, double b, double z);

// Lower incomplete gamma, gamma(a, z) = integral_0^z u^(a-1) e^-u du.
// Series for z < a + 1, continued fraction otherwise. z >= 0, a > 0.
double lower_incomplete_gamma(double a, double z);

// Regularized lower incomplete gamma P(a, z) = gamma(a, z) / Gamma(a).
double reg_lower_gamma(double a, double z);

} // namespace hetnet::num

#endif
