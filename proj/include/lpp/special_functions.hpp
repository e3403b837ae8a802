#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpp {

inline double gamma_fn(double s) {
  if (!(s > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  return std::tgamma(s);
}

namespace detail {

// Regularized lower incomplete gamma P(s,x) by power series; valid for
// x < s + 1 where the series converges quickly.
inline double gamma_p_series(double s, double x) {
  double ap = s;
  double term = 1.0 / s;
  double sum = term;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized upper incomplete gamma Q(s,x) by modified Lentz continued
// fraction; valid for x >= s + 1.
inline double gamma_q_contfrac(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

}  // namespace detail

// Upper incomplete gamma, unregularized: integral of t^{s-1} e^{-t} over (x, inf).
inline double upper_incomplete_gamma(double s, double x) {
  if (!(s > 0.0))
    throw std::domain_error("upper_incomplete_gamma: s must be > 0");
  if (!(x >= 0.0))
    throw std::domain_error("upper_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return gamma_fn(s);
  if (std::isinf(x)) return 0.0;
  if (x < s + 1.0)
    return (1.0 - detail::gamma_p_series(s, x)) * gamma_fn(s);
  return detail::gamma_q_contfrac(s, x) * gamma_fn(s);
}

// Lambert W, branch -1: solves w e^w = x for w <= -1, with x in (-1/e, 0).
// Seeded from the branch-point series or the logarithmic asymptote, then
// refined by bracketed Newton steps until the residual w e^w - x is at
// machine level.
inline double lambert_w_minus1(double x) {
  if (!(x < 0.0))
    throw std::domain_error("lambert_w_minus1: argument must be negative");
  const double q = 2.0 * (1.0 + M_E * x);
  if (q <= 0.0) {
    if (q > -1e-9) return -1.0;  // branch point up to rounding of -1/e
    throw std::domain_error("lambert_w_minus1: argument below -1/e");
  }

  double w;
  if (x < -0.25) {
    // series around the branch point in sigma = sqrt(2(1+ex))
    const double sig = std::sqrt(q);
    w = -1.0 - sig * (1.0 + sig * (1.0 / 3.0 + sig * (11.0 / 72.0)));
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1);
  }
  if (w > -1.0) w = -1.0 - 1e-12;

  // f(w) = w e^w - x decreases from -x > 0 (w -> -inf) to -1/e - x <= 0 (w = -1)
  double left = std::min(w * 2.0, -2.0);
  while (left * std::exp(left) - x < 0.0 && left > -746.0) left *= 2.0;
  if (left < -746.0) left = -746.0;
  double right = -1.0;

  for (int iter = 0; iter < 120; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::fabs(f) < 1e-16 + 1e-15 * std::fabs(x)) break;
    if (f > 0.0) left = w; else right = w;
    const double fp = (1.0 + w) * ew;
    double next = w - f / fp;
    if (!(next > left) || !(next < right) || !std::isfinite(next))
      next = 0.5 * (left + right);
    if (next == w) break;
    w = next;
    if (right - left < 1e-15 * std::fabs(w)) break;
  }
  return w;
}

// Standard normal CDF.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * M_SQRT1_2);
}

// Standard normal quantile on (0,1): rational initial approximation
// followed by one Halley step against the erfc-based CDF. Absolute error
// is far below 1e-9 across the domain.
inline double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("normal_quantile: p must be in (0,1)");
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double z;
  if (p < p_low) {
    const double u = std::sqrt(-2.0 * std::log(p));
    z = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double u = p - 0.5;
    const double r = u * u;
    z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    z = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  const double err = normal_cdf(z) - p;
  const double step = err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * z * z);
  return z - step / (1.0 + 0.5 * z * step);
}

// Lorenz P-P plot of a Weibull(a,b) first argument against a unit
// exponential second argument, in closed form. The exponential side
// inverts through Lambert W_{-1}; levels above the exponential mean map
// to 1 by the inverse-curve extension.
inline double analytic_lpp_weibull_exp(double a, double b, double p) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("analytic_lpp_weibull_exp: shape and scale must be > 0");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::domain_error("analytic_lpp_weibull_exp: p must be in [0,1]");
  const double s = 1.0 + 1.0 / a;
  const double u = -std::log1p(-p);  // = -log(1-p); +inf at p = 1
  const double level =
      b * (gamma_fn(s) - upper_incomplete_gamma(s, u));  // Weibull Lorenz value
  if (level <= 0.0) return 0.0;
  if (level >= 1.0) return 1.0;
  const double w = lambert_w_minus1((level - 1.0) / M_E);
  const double r = 1.0 - std::exp(1.0 + w);
  return r < 0.0 ? 0.0 : (r > 1.0 ? 1.0 : r);
}

}  // namespace lpp
