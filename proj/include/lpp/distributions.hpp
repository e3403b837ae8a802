#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lpp/rng.hpp"
#include "lpp/sample.hpp"
#include "lpp/special_functions.hpp"

namespace lpp {

struct Weibull {
  double shape;
  double scale;
};

struct UnitExponential {};

struct SinghMaddala {
  double a;  // shape
  double q;  // shape
  double b;  // scale
};

struct LognormalComponent {
  double meanlog;
  double sdlog;
};

struct LognormalMixture {
  std::vector<double> weights;
  std::vector<LognormalComponent> components;
};

// Scale b such that a Weibull(a, b) has mean 1, i.e. 1 / Gamma(1 + 1/a).
inline double weibull_unit_mean_scale(double a) {
  if (!(a > 0.0))
    throw std::domain_error("weibull_unit_mean_scale: shape must be > 0");
  return 1.0 / gamma_fn(1.0 + 1.0 / a);
}

// A parametric distribution on the non-negative half line: CDF, quantile
// function and a name, with parameters validated at construction.
class DistSpec {
 public:
  using Variant =
      std::variant<Weibull, UnitExponential, SinghMaddala, LognormalMixture>;

  explicit DistSpec(Variant v) : v_(std::move(v)) { validate(); }

  static DistSpec weibull(double shape, double scale) {
    return DistSpec(Weibull{shape, scale});
  }
  static DistSpec unit_exponential() { return DistSpec(UnitExponential{}); }
  static DistSpec singh_maddala(double a, double q, double b = 1.0) {
    return DistSpec(SinghMaddala{a, q, b});
  }
  static DistSpec lognormal_mixture(std::vector<double> weights,
                                    std::vector<LognormalComponent> components) {
    return DistSpec(LognormalMixture{std::move(weights), std::move(components)});
  }

  const Variant& variant() const { return v_; }

  double cdf(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("cdf: x must be >= 0");
    return std::visit([x](const auto& d) { return cdf_impl(d, x); }, v_);
  }

  double quantile(double p) const {
    if (!(p >= 0.0) || !(p < 1.0))
      throw std::domain_error("quantile: p must be in [0,1)");
    return std::visit([p](const auto& d) { return quantile_impl(d, p); }, v_);
  }

  std::string name() const {
    struct Namer {
      std::string operator()(const Weibull& d) const {
        return "weibull(" + std::to_string(d.shape) + "," +
               std::to_string(d.scale) + ")";
      }
      std::string operator()(const UnitExponential&) const { return "exp(1)"; }
      std::string operator()(const SinghMaddala& d) const {
        return "singh_maddala(" + std::to_string(d.a) + "," +
               std::to_string(d.q) + "," + std::to_string(d.b) + ")";
      }
      std::string operator()(const LognormalMixture& d) const {
        std::string out = "lognormal_mixture(";
        for (std::size_t i = 0; i < d.components.size(); ++i) {
          if (i) out += "+";
          out += std::to_string(d.weights[i]) + "*LN(" +
                 std::to_string(d.components[i].meanlog) + "," +
                 std::to_string(d.components[i].sdlog) + ")";
        }
        return out + ")";
      }
    };
    return std::visit(Namer{}, v_);
  }

 private:
  void validate() const {
    struct Checker {
      void operator()(const Weibull& d) const {
        if (!(d.shape > 0.0) || !(d.scale > 0.0) || !std::isfinite(d.shape) ||
            !std::isfinite(d.scale))
          throw std::invalid_argument("Weibull: shape and scale must be > 0");
      }
      void operator()(const UnitExponential&) const {}
      void operator()(const SinghMaddala& d) const {
        if (!(d.a > 0.0) || !(d.q > 0.0) || !(d.b > 0.0))
          throw std::invalid_argument("SinghMaddala: parameters must be > 0");
      }
      void operator()(const LognormalMixture& d) const {
        if (d.components.empty() || d.weights.size() != d.components.size())
          throw std::invalid_argument(
              "LognormalMixture: weights and components must match and be nonempty");
        double sum = 0.0;
        for (double w : d.weights) {
          if (!(w >= 0.0))
            throw std::invalid_argument("LognormalMixture: weights must be >= 0");
          sum += w;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
          throw std::invalid_argument("LognormalMixture: weights must sum to 1");
        for (const auto& c : d.components)
          if (!(c.sdlog > 0.0) || !std::isfinite(c.meanlog))
            throw std::invalid_argument("LognormalMixture: invalid component");
      }
    };
    std::visit(Checker{}, v_);
  }

  static double cdf_impl(const Weibull& d, double x) {
    return -std::expm1(-std::pow(x / d.scale, d.shape));
  }
  static double cdf_impl(const UnitExponential&, double x) {
    return -std::expm1(-x);
  }
  static double cdf_impl(const SinghMaddala& d, double x) {
    return -std::expm1(-d.q * std::log1p(std::pow(x / d.b, d.a)));
  }
  static double cdf_impl(const LognormalMixture& d, double x) {
    if (x <= 0.0) return 0.0;
    const double lx = std::log(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.components.size(); ++i)
      acc += d.weights[i] *
             normal_cdf((lx - d.components[i].meanlog) / d.components[i].sdlog);
    return acc;
  }

  static double quantile_impl(const Weibull& d, double p) {
    return d.scale * std::pow(-std::log1p(-p), 1.0 / d.shape);
  }
  static double quantile_impl(const UnitExponential&, double p) {
    return -std::log1p(-p);
  }
  static double quantile_impl(const SinghMaddala& d, double p) {
    return d.b * std::pow(std::expm1(-std::log1p(-p) / d.q), 1.0 / d.a);
  }
  static double quantile_impl(const LognormalMixture& d, double p) {
    // No closed form: bracket by doubling, then bisect to 1e-12 in x.
    if (p == 0.0) return 0.0;
    double hi = 1.0;
    while (cdf_impl(d, hi) <= p) {
      hi *= 2.0;
      if (hi > 1e300)
        throw std::runtime_error("LognormalMixture quantile: bracket overflow");
    }
    double lo = 0.0;
    while (hi - lo > 1e-12 + 1e-15 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (cdf_impl(d, mid) > p) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
  }

  Variant v_;
};

// n inverse-transform draws from the given distribution.
inline Sample sample_iid(const DistSpec& spec, std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_iid: n must be >= 1");
  std::vector<double> values(n);
  for (double& v : values) v = spec.quantile(rng.uniform01());
  return Sample(std::move(values));
}

struct PairedSamplerConfig {
  double rho;
  DistSpec f;
  DistSpec g;
  std::size_t n;
};

// Dependent pairs through a Gaussian copula: two independent standard
// normals are correlated as (z1, rho*z1 + sqrt(1-rho^2)*z2), pushed to
// uniforms by the normal CDF and then through the marginal quantiles.
inline PairedSample sample_paired(const PairedSamplerConfig& cfg, RngStream& rng) {
  if (!(std::fabs(cfg.rho) < 1.0))
    throw std::invalid_argument("sample_paired: |rho| must be < 1");
  if (cfg.n == 0) throw std::invalid_argument("sample_paired: n must be >= 1");
  const double mix = std::sqrt(1.0 - cfg.rho * cfg.rho);
  const double pmax = 1.0 - 0x1.0p-53;
  std::vector<double> xs(cfg.n), ys(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double z1 = normal_quantile(rng.uniform01());
    const double z2 = normal_quantile(rng.uniform01());
    const double zc = cfg.rho * z1 + mix * z2;
    const double u1 = std::min(normal_cdf(z1), pmax);
    const double u2 = std::min(normal_cdf(zc), pmax);
    xs[i] = cfg.f.quantile(u1);
    ys[i] = cfg.g.quantile(u2);
  }
  return PairedSample(Sample(std::move(xs)), Sample(std::move(ys)));
}

}  // namespace lpp
