#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpp/distributions.hpp"
#include "lpp/rng.hpp"
#include "support/oracles.hpp"

using Catch::Approx;
using lpp::DistSpec;

namespace {

const DistSpec kMixture = DistSpec::lognormal_mixture(
    {0.9, 0.1}, {{0.85, 0.4}, {0.4, 0.4}});

double ks_distance(const std::vector<double>& values, const DistSpec& spec) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = spec.cdf(sorted[i]);
    d = std::max(d, std::fabs((i + 1) / n - f));
    d = std::max(d, std::fabs(f - i / n));
  }
  return d;
}

}  // namespace

TEST_CASE("cdf closed forms", "[distributions]") {
  CHECK(DistSpec::weibull(1, 1).cdf(0.0) == 0.0);
  CHECK(DistSpec::singh_maddala(1, 1, 1).cdf(1.0) == Approx(0.5).epsilon(1e-14));
  CHECK(DistSpec::weibull(2, 1).cdf(1.0) ==
        Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(DistSpec::unit_exponential().cdf(2.0) ==
        Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  CHECK(kMixture.cdf(0.0) == 0.0);
  CHECK_THROWS_AS(DistSpec::weibull(1, 1).cdf(-0.1), std::domain_error);
}

TEST_CASE("quantile closed forms and the mixture bisection", "[distributions]") {
  CHECK(DistSpec::singh_maddala(1.7, 2.2, 1).quantile(0.0) == 0.0);
  CHECK(DistSpec::singh_maddala(1, 1, 1).quantile(0.5) == Approx(1.0).epsilon(1e-12));

  const double med = kMixture.quantile(0.5);
  CHECK(kMixture.cdf(med) == Approx(0.5).margin(1e-9));
  const double med_oracle = oracles::bisect_increasing(
      [](double x) { return kMixture.cdf(x); }, 0.0, 64.0, 0.5);
  CHECK(med == Approx(med_oracle).margin(1e-9));

  CHECK_THROWS_AS(kMixture.quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(kMixture.quantile(-0.1), std::domain_error);
}

TEST_CASE("unit-mean weibull scale", "[distributions]") {
  CHECK(lpp::weibull_unit_mean_scale(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(lpp::weibull_unit_mean_scale(2.0) ==
        Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(lpp::weibull_unit_mean_scale(1.3) ==
        Approx(1.0 / oracles::gamma_by_adaptive(1.0 + 1.0 / 1.3)).epsilon(1e-10));
  CHECK_THROWS_AS(lpp::weibull_unit_mean_scale(0.0), std::domain_error);
}

TEST_CASE("inverse-transform consistency and monotonicity", "[distributions]") {
  const std::vector<DistSpec> specs = {
      DistSpec::weibull(2.0, 1.5), DistSpec::singh_maddala(1.5, 1.2, 1.0),
      DistSpec::unit_exponential(), kMixture};
  for (const auto& spec : specs) {
    double prev_q = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double p = (i + 0.5) / 1000.0;
      const double q = spec.quantile(p);
      CHECK(q >= prev_q);
      CHECK(spec.cdf(q) == Approx(p).margin(1e-9));
      prev_q = q;
    }
    double prev_f = 0.0;
    for (double x : {0.0, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double f = spec.cdf(x);
      CHECK((f >= prev_f && f >= 0.0 && f <= 1.0));
      prev_f = f;
    }
  }
}

TEST_CASE("iid sampler determinism and law", "[distributions]") {
  const DistSpec w11 = DistSpec::weibull(1, 1);

  lpp::RngStream r1(42), r2(42), r3(43);
  const auto a = lpp::sample_iid(w11, 1, r1);
  const auto b = lpp::sample_iid(w11, 1, r2);
  CHECK(a.values() == b.values());
  const auto c = lpp::sample_iid(w11, 1000, r1);
  const auto d = lpp::sample_iid(w11, 1000, r3);
  CHECK(c.values() != d.values());

  lpp::RngStream r4(7);
  const auto big = lpp::sample_iid(w11, 100000, r4);
  CHECK(big.mean() == Approx(1.0).margin(0.02));

  CHECK_THROWS_AS(lpp::sample_iid(w11, 0, r4), std::invalid_argument);
}

TEST_CASE("paired sampler copula structure", "[distributions]") {
  const DistSpec f = DistSpec::singh_maddala(1.5, 1.8, 1.0);
  const DistSpec g = DistSpec::singh_maddala(1.0, 1.8, 1.0);

  SECTION("rho = 0 gives independent scores") {
    const std::size_t n = 100000;
    lpp::RngStream rng(11);
    const auto xy = lpp::sample_paired({0.0, f, g, n}, rng);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = f.cdf(xy.first.values()[i]);
      const double v = g.cdf(xy.second.values()[i]);
      sx += u; sy += v; sxx += u * u; syy += v * v; sxy += u * v;
    }
    const double dn = static_cast<double>(n);
    const double corr = (sxy / dn - sx / dn * sy / dn) /
                        std::sqrt((sxx / dn - sx / dn * sx / dn) *
                                  (syy / dn - sy / dn * sy / dn));
    CHECK(std::fabs(corr) < 3.0 / std::sqrt(dn));
  }

  SECTION("rho = 0.75 shows up in the gaussian scores") {
    const std::size_t n = 100000;
    lpp::RngStream rng(12);
    const auto xy = lpp::sample_paired({0.75, f, g, n}, rng);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z1 = lpp::normal_quantile(f.cdf(xy.first.values()[i]));
      const double z2 = lpp::normal_quantile(g.cdf(xy.second.values()[i]));
      sx += z1; sy += z2; sxx += z1 * z1; syy += z2 * z2; sxy += z1 * z2;
    }
    const double dn = static_cast<double>(n);
    const double corr = (sxy / dn - sx / dn * sy / dn) /
                        std::sqrt((sxx / dn - sx / dn * sx / dn) *
                                  (syy / dn - sy / dn * sy / dn));
    CHECK(corr == Approx(0.75).margin(0.01));
  }

  SECTION("margins follow the requested laws") {
    const std::size_t n = 10000;
    lpp::RngStream rng(13);
    const auto xy = lpp::sample_paired({0.5, f, g, n}, rng);
    const double band = 1.63 / std::sqrt(static_cast<double>(n));
    CHECK(ks_distance(xy.first.values(), f) < band);
    CHECK(ks_distance(xy.second.values(), g) < band);
  }

  SECTION("invalid configs are rejected") {
    lpp::RngStream rng(1);
    CHECK_THROWS_AS(lpp::sample_paired({1.0, f, g, 10}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(lpp::sample_paired({0.5, f, g, 0}, rng),
                    std::invalid_argument);
  }
}

TEST_CASE("parameter validation", "[distributions]") {
  CHECK_THROWS_AS(DistSpec::weibull(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DistSpec::weibull(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(DistSpec::singh_maddala(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DistSpec::lognormal_mixture({0.5, 0.4}, {{0, 1}, {0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistSpec::lognormal_mixture({1.0}, {{0, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistSpec::lognormal_mixture({}, {}), std::invalid_argument);
}
