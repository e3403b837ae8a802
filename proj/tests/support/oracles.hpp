#pragma once

// Test-only numeric oracles. These deliberately avoid the code paths they
// are used to check: plain quadrature, bisection and branch-by-branch
// evaluation of the displayed definitions.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double whole, double tol,
                                   int depth) {
  const double mid = 0.5 * (a + b);
  const double left = simpson(f, a, mid);
  const double right = simpson(f, mid, b);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, mid, b, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12) {
  return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 48);
}

// 64-point Gauss-Laguerre rule: nodes by Newton on the recurrence,
// weights from the derivative. Integrates f(t) e^{-t} over (0, inf).
inline const std::vector<std::pair<double, double>>& gauss_laguerre_64() {
  static const std::vector<std::pair<double, double>> table = [] {
    const int n = 64;
    std::vector<std::pair<double, double>> pts(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == 0) {
        z = 3.0 / (1.0 + 2.4 * n);
      } else if (i == 1) {
        z += 15.0 / (1.0 + 2.5 * n);
      } else {
        const double ai = i - 1;
        z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - pts[i - 2].first);
      }
      double p1 = 1.0, p2 = 0.0, pp = 1.0;
      for (int iter = 0; iter < 200; ++iter) {
        p1 = 1.0;
        p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (p1 - p2) / z;
        const double z_old = z;
        z = z_old - p1 / pp;
        if (std::fabs(z - z_old) <= 1e-15 * std::fabs(z)) break;
      }
      pts[i] = {z, -1.0 / (pp * n * p2)};
    }
    return pts;
  }();
  return table;
}

// Gamma by the 64-point rule; accurate to ~1e-8 relative for s >= 2.
inline double gamma_by_quadrature_64(double s) {
  double acc = 0.0;
  for (const auto& [x, w] : gauss_laguerre_64()) acc += w * std::pow(x, s - 1.0);
  return acc;
}

// Gamma by adaptive quadrature, split at 1 to isolate the origin.
inline double gamma_by_adaptive(double s) {
  auto f = [s](double t) {
    return t <= 0.0 ? 0.0 : std::pow(t, s - 1.0) * std::exp(-t);
  };
  const double hi = 40.0 + 10.0 * s;
  return adaptive_simpson(f, 0.0, 1.0, 1e-14) + adaptive_simpson(f, 1.0, hi, 1e-13);
}

inline double upper_gamma_by_quadrature(double s, double x) {
  const double hi = std::max(x, 1.0) + 64.0 + 16.0 * s;
  return adaptive_simpson(
      [s](double t) { return std::pow(t, s - 1.0) * std::exp(-t); }, x, hi,
      1e-13);
}

inline double lambert_wm1_by_bisection(double x) {
  if (!(x > -std::exp(-1.0)) || !(x < 0.0))
    throw std::domain_error("lambert oracle: x out of range");
  double lo = -745.0, hi = -1.0;  // w e^w increases from ~0- to -1/e on [lo, hi] reversed
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) - x > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Solves f(p) = target for increasing f by bisection.
inline double bisect_increasing(const std::function<double(double)>& f,
                                double lo, double hi, double target,
                                int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Step Lorenz curve of sorted values, evaluated branch by branch.
inline double brute_step_lorenz(std::span<const double> sorted, double t) {
  const std::size_t n = sorted.size();
  std::size_t terms;
  if (t < 1.0)
    terms = static_cast<std::size_t>(std::floor(static_cast<double>(n) * t)) + 1;
  else
    terms = n;
  if (terms > n) terms = n;
  long double acc = 0.0L;
  for (std::size_t i = 0; i < terms; ++i) acc += sorted[i];
  return static_cast<double>(acc / static_cast<long double>(n));
}

// Step inverse Lorenz curve of sorted values at a level, by counting the
// cumulative means that the level reaches (the inf-rule resolution).
inline double brute_step_lorenz_inverse(std::span<const double> sorted,
                                        double level) {
  const std::size_t m = sorted.size();
  long double acc = 0.0L;
  std::size_t count = 0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += sorted[j];
    if (static_cast<double>(acc / static_cast<long double>(m)) <= level)
      count = j + 1;
    else
      break;
  }
  return static_cast<double>(count) / static_cast<double>(m);
}

inline double brute_step_lpp(std::span<const double> xs_sorted,
                             std::span<const double> ys_sorted, double t) {
  return brute_step_lorenz_inverse(ys_sorted, brute_step_lorenz(xs_sorted, t));
}

}  // namespace oracles
