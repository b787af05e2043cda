#include <cmath>

#include "doctest.h"
#include "hetnet/errors.hpp"
#include "hetnet/numeric/quadrature.hpp"
#include "hetnet/numeric/special.hpp"

using namespace hetnet;

namespace {

// Independent oracle for B'(a, b, z) = integral_z^1 u^(a-1) (1-u)^(b-1) du.
// The substitution v = (1-u)^b removes the u -> 1 singularity when b < 1:
//   B' = (1/b) integral_0^{(1-z)^b} (1 - v^(1/b))^(a-1) dv.
double comp_beta_oracle(double a, double b, double z) {
    const double upper = std::pow(1.0 - z, b);
    return num::integrate(
               [&](double v) {
                   const double u = 1.0 - std::pow(v, 1.0 / b);
                   return std::pow(u, a - 1.0);
               },
               0.0, upper) /
           b;
}

} // namespace

TEST_CASE("complete beta matches exact values") {
    CHECK(num::beta_fn(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(num::beta_fn(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK(num::beta_fn(0.5, 0.5) ==
          doctest::Approx(3.14159265358979323846).epsilon(1e-13));
    CHECK_THROWS_AS(num::beta_fn(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(num::beta_fn(1.0, -2.0), domain_error);
}

TEST_CASE("complementary incomplete beta closed forms") {
    // B'(1, b, z) = (1-z)^b / b.
    for (double b : {0.5, 1.0, 2.7, 14.0})
        for (double z : {0.01, 0.3, 0.9, 0.999}) {
            const double want = std::pow(1.0 - z, b) / b;
            CHECK(num::comp_incomplete_beta(1.0, b, z) ==
                  doctest::Approx(want).epsilon(1e-12));
        }
    // B'(a, 1, z) = (1 - z^a) / a.
    for (double a : {0.5, 1.5, 3.0})
        for (double z : {0.1, 0.5, 0.95}) {
            const double want = (1.0 - std::pow(z, a)) / a;
            CHECK(num::comp_incomplete_beta(a, 1.0, z) ==
                  doctest::Approx(want).epsilon(1e-12));
        }
    // B'(1/2, 1/2, z) = 2 arccos(sqrt(z)); this exact form anchors the
    // alpha = 4 closed-form coverage test downstream.
    for (double z : {0.05, 0.25, 0.5, 0.8, 0.99}) {
        const double want = 2.0 * std::acos(std::sqrt(z));
        CHECK(num::comp_incomplete_beta(0.5, 0.5, z) ==
              doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("complementary incomplete beta against a quadrature oracle") {
    // Parameter shapes that the interference blocks actually use:
    // (2/alpha, 1 - 2/alpha) and (1 + 2/alpha, a - 2/alpha) for
    // path-loss exponents in (2, 6].
    const double cases[][3] = {
        {2.0 / 3.5, 1.0 - 2.0 / 3.5, 0.2},
        {2.0 / 4.5, 1.0 - 2.0 / 4.5, 0.7},
        {1.0 + 2.0 / 3.5, 1.0 - 2.0 / 3.5, 0.35},
        {1.0 + 2.0 / 4.0, 2.0 - 2.0 / 4.0, 0.5},
        {1.0 + 2.0 / 5.0, 7.0 - 2.0 / 5.0, 0.12},
        {1.5, 0.25, 0.6},
    };
    for (const auto& c : cases) {
        const double want = comp_beta_oracle(c[0], c[1], c[2]);
        CHECK(num::comp_incomplete_beta(c[0], c[1], c[2]) ==
              doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("incomplete beta pieces partition the complete integral") {
    for (double a : {0.4, 1.0, 2.6})
        for (double b : {0.55, 1.3, 6.0})
            for (double z : {0.05, 0.5, 0.97}) {
                const double head =
                    num::beta_fn(a, b) * num::reg_incomplete_beta(a, b, z);
                const double tail = num::comp_incomplete_beta(a, b, z);
                CHECK(head + tail ==
                      doctest::Approx(num::beta_fn(a, b)).epsilon(1e-12));
            }
    CHECK_THROWS_AS(num::comp_incomplete_beta(1.0, 1.0, 0.0), domain_error);
    CHECK_THROWS_AS(num::comp_incomplete_beta(1.0, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(num::reg_incomplete_beta(1.0, 1.0, 1.5), domain_error);
}

TEST_CASE("lower incomplete gamma closed forms and oracle") {
    // gamma(1, z) = 1 - exp(-z).
    for (double z : {0.1, 1.0, 5.0, 30.0})
        CHECK(num::lower_incomplete_gamma(1.0, z) ==
              doctest::Approx(1.0 - std::exp(-z)).epsilon(1e-13));
    // gamma(1/2, z) = sqrt(pi) erf(sqrt(z)).
    for (double z : {0.2, 1.7, 9.0}) {
        const double want =
            std::sqrt(3.14159265358979323846) * std::erf(std::sqrt(z));
        CHECK(num::lower_incomplete_gamma(0.5, z) ==
              doctest::Approx(want).epsilon(1e-12));
    }
    // Quadrature oracle across the series / continued-fraction switch.
    for (double a : {0.8, 3.3, 7.0})
        for (double z : {0.5, a + 0.9, a + 1.1, 4.0 * a}) {
            const double want = num::integrate(
                [&](double u) { return std::pow(u, a - 1.0) * std::exp(-u); },
                0.0, z);
            CHECK(num::lower_incomplete_gamma(a, z) ==
                  doctest::Approx(want).epsilon(1e-9));
        }
}

TEST_CASE("regularized gamma stays within [0, 1] and is monotone") {
    double prev = 0.0;
    for (double z = 0.0; z <= 40.0; z += 0.5) {
        const double v = num::reg_lower_gamma(4.2, z);
        CHECK(v >= prev);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK(num::reg_lower_gamma(4.2, 200.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(num::reg_lower_gamma(-1.0, 1.0), domain_error);
    CHECK_THROWS_AS(num::reg_lower_gamma(1.0, -1.0), domain_error);
}
