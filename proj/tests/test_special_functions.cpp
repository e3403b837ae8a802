#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lpp/special_functions.hpp"
#include "support/oracles.hpp"

using Catch::Approx;

TEST_CASE("gamma function", "[special]") {
  CHECK(lpp::gamma_fn(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(lpp::gamma_fn(0.5) == Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(lpp::gamma_fn(5.0) == Approx(24.0).epsilon(1e-13));
  // oracle sanity against the closed form 15*sqrt(pi)/8 before using it
  CHECK(oracles::gamma_by_quadrature_64(3.5) ==
        Approx(15.0 * std::sqrt(M_PI) / 8.0).epsilon(1e-7));
  CHECK(lpp::gamma_fn(3.7) ==
        Approx(oracles::gamma_by_quadrature_64(3.7)).epsilon(1e-8));
  CHECK_THROWS_AS(lpp::gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(lpp::gamma_fn(-2.0), std::domain_error);
}

TEST_CASE("upper incomplete gamma", "[special]") {
  for (double s : {0.3, 1.0, 2.5, 7.0})
    CHECK(lpp::upper_incomplete_gamma(s, 0.0) ==
          Approx(lpp::gamma_fn(s)).epsilon(1e-14));
  for (double x : {0.1, 1.0, 3.0, 20.0})
    CHECK(lpp::upper_incomplete_gamma(1.0, x) ==
          Approx(std::exp(-x)).epsilon(1e-12));
  CHECK(lpp::upper_incomplete_gamma(1.5, 2.0) ==
        Approx(oracles::upper_gamma_by_quadrature(1.5, 2.0)).epsilon(1e-8));
  CHECK(lpp::upper_incomplete_gamma(3.7, 6.2) ==
        Approx(oracles::upper_gamma_by_quadrature(3.7, 6.2)).epsilon(1e-8));

  // decreasing in x, vanishing in the tail
  double prev = lpp::upper_incomplete_gamma(2.2, 0.0);
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double cur = lpp::upper_incomplete_gamma(2.2, x);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(lpp::upper_incomplete_gamma(2.2, 600.0) < 1e-250);

  CHECK_THROWS_AS(lpp::upper_incomplete_gamma(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(lpp::upper_incomplete_gamma(1.0, -0.5), std::domain_error);
}

TEST_CASE("lambert w minus-1 branch", "[special]") {
  CHECK(lpp::lambert_w_minus1(-std::exp(-1.0)) == -1.0);
  CHECK(lpp::lambert_w_minus1(-0.1) ==
        Approx(oracles::lambert_wm1_by_bisection(-0.1)).margin(1e-12));
  CHECK(lpp::lambert_w_minus1(-0.1) == Approx(-3.577152).margin(1e-6));

  // round trip at w = -2
  const double x = -2.0 * std::exp(-2.0);
  CHECK(lpp::lambert_w_minus1(x) == Approx(-2.0).margin(1e-12));

  CHECK_THROWS_AS(lpp::lambert_w_minus1(0.0), std::domain_error);
  CHECK_THROWS_AS(lpp::lambert_w_minus1(0.2), std::domain_error);
  CHECK_THROWS_AS(lpp::lambert_w_minus1(-0.5), std::domain_error);
}

TEST_CASE("lambert w residuals on a log-spaced grid", "[special]") {
  const double lo = std::log(1e-12);
  const double hi = std::log(std::exp(-1.0) - 1e-9);
  for (int i = 0; i < 1000; ++i) {
    const double lx = lo + (hi - lo) * i / 999.0;
    const double x = -std::exp(lx);
    const double w = lpp::lambert_w_minus1(x);
    CHECK(w <= -1.0);
    CHECK(std::fabs(w * std::exp(w) - x) < 1e-12);
  }
}

TEST_CASE("normal cdf and quantile", "[special]") {
  CHECK(lpp::normal_cdf(0.0) == Approx(0.5).epsilon(1e-15));
  CHECK(lpp::normal_quantile(0.975) == Approx(1.959963984540054).epsilon(1e-12));
  for (double z : {-6.0, -2.3, -0.7, 0.0, 0.4, 1.9, 5.5})
    CHECK(lpp::normal_quantile(lpp::normal_cdf(z)) == Approx(z).margin(1e-11));
  for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-10})
    CHECK(lpp::normal_cdf(lpp::normal_quantile(p)) == Approx(p).epsilon(1e-11));
  CHECK_THROWS_AS(lpp::normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(lpp::normal_quantile(1.0), std::domain_error);
}

namespace {

// Curve oracle built from quadrature of the quantile functions and a
// bisection inversion; shares nothing with the Lambert path under test.
double lpp_weibull_exp_oracle(double a, double b, double p) {
  auto weibull_q = [a, b](double u) {
    return b * std::pow(-std::log1p(-u), 1.0 / a);
  };
  auto exp_lorenz = [](double t) {
    return oracles::adaptive_simpson(
        [](double u) { return -std::log1p(-u); }, 0.0, t, 1e-13);
  };
  const double level = oracles::adaptive_simpson(weibull_q, 0.0, p, 1e-13);
  if (level >= 1.0) return 1.0;
  return oracles::bisect_increasing(exp_lorenz, 0.0, 1.0 - 1e-15, level);
}

}  // namespace

TEST_CASE("closed-form weibull vs exponential curve", "[special]") {
  for (double p : {0.0, 0.05, 0.31, 0.6, 0.92})
    CHECK(lpp::analytic_lpp_weibull_exp(1.0, 1.0, p) == Approx(p).margin(1e-9));
  CHECK(lpp::analytic_lpp_weibull_exp(2.0, 1.5, 0.0) == 0.0);
  CHECK(lpp::analytic_lpp_weibull_exp(2.0, 1.5, 0.5) ==
        Approx(lpp_weibull_exp_oracle(2.0, 1.5, 0.5)).margin(1e-7));
  CHECK(lpp::analytic_lpp_weibull_exp(0.6, 1.2, 0.4) ==
        Approx(lpp_weibull_exp_oracle(0.6, 1.2, 0.4)).margin(1e-7));

  SECTION("monotone into [0,1], and above the identity under dominance") {
    for (auto [a, b] : {std::pair{2.0, 1.5}, {1.3, 1.0}, {2.0, 0.8}}) {
      double prev = 0.0;
      const bool dominates = a >= 1.0 && b * lpp::gamma_fn(1.0 + 1.0 / a) >= 1.0;
      for (int i = 0; i <= 400; ++i) {
        const double p = i / 400.0;
        const double v = lpp::analytic_lpp_weibull_exp(a, b, p);
        CHECK(v >= prev - 1e-12);
        CHECK((v >= 0.0 && v <= 1.0));
        if (dominates) CHECK(v >= p - 1e-9);
        prev = v;
      }
    }
  }

  SECTION("p = 1 maps through the curve limit") {
    CHECK(lpp::analytic_lpp_weibull_exp(2.0, 1.5, 1.0) == 1.0);
    const double v = lpp::analytic_lpp_weibull_exp(2.0, 0.8, 1.0);
    CHECK((v > 0.0 && v <= 1.0));
  }
}
