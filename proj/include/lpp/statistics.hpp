#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include "lpp/lorenz.hpp"
#include "lpp/sample.hpp"

namespace lpp {

// Member of the family T_p(v) = ||v_+||_p for p >= 1, including p = inf.
struct StatKind {
  enum class Family { TInf, T1, Tp };

  Family family = Family::TInf;
  double p = 1.0;

  static StatKind t_inf() { return {Family::TInf, std::numeric_limits<double>::infinity()}; }
  static StatKind t_one() { return {Family::T1, 1.0}; }
  static StatKind t_p(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("StatKind: p must be >= 1");
    if (std::isinf(p)) return t_inf();
    if (p == 1.0) return t_one();
    return {Family::Tp, p};
  }

  std::string label() const {
    switch (family) {
      case Family::TInf: return "tinf";
      case Family::T1: return "t1";
      default: return "tp:" + std::to_string(p);
    }
  }
};

// Unscaled functional value together with the sqrt(nm/(n+m)) factor used
// for reporting. Bootstrap decisions compare the same functional on both
// sides, so the factor cancels there by positive homogeneity.
struct FunctionalValue {
  double raw = 0.0;
  double scale = 1.0;
  double scaled() const { return raw * scale; }
};

inline double effective_size_factor(std::size_t n, std::size_t m) {
  return static_cast<double>(n) * static_cast<double>(m) /
         static_cast<double>(n + m);
}

// ||g_+||_p of a grid function with equal weights 1/N per point.
inline double positive_part_norm(const StatKind& kind, std::span<const double> g) {
  if (g.empty()) return 0.0;
  if (kind.family == StatKind::Family::TInf) {
    double best = 0.0;
    for (double v : g)
      if (v > best) best = v;
    return best;
  }
  const double inv_n = 1.0 / static_cast<double>(g.size());
  if (kind.family == StatKind::Family::T1) {
    double acc = 0.0;
    for (double v : g)
      if (v > 0.0) acc += v;
    return acc * inv_n;
  }
  double acc = 0.0;
  for (double v : g)
    if (v > 0.0) acc += std::pow(v, kind.p);
  return std::pow(acc * inv_n, 1.0 / kind.p);
}

namespace detail {

// T(I - curve) from node values: T_inf over the nodes k/n, the integral
// functionals over the midpoints (2k-1)/(2n) where the step curve takes
// its node value.
inline double observed_functional(const StatKind& kind,
                                  std::span<const double> v) {
  const std::size_t n = v.size();
  const double dn = static_cast<double>(n);
  if (kind.family == StatKind::Family::TInf) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double g = static_cast<double>(k + 1) / dn - v[k];
      if (g > best) best = g;
    }
    return best;
  }
  if (kind.family == StatKind::Family::T1) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double g = (2.0 * static_cast<double>(k) + 1.0) / (2.0 * dn) - v[k];
      if (g > 0.0) acc += g;
    }
    return acc / dn;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double g = (2.0 * static_cast<double>(k) + 1.0) / (2.0 * dn) - v[k];
    if (g > 0.0) acc += std::pow(g, kind.p);
  }
  return std::pow(acc / dn, 1.0 / kind.p);
}

// T(curve - curve*) for two step curves on the same {k/n} grid; node and
// midpoint evaluations coincide for the difference.
inline double difference_functional(const StatKind& kind,
                                    std::span<const double> v,
                                    std::span<const double> vstar) {
  const std::size_t n = v.size();
  if (kind.family == StatKind::Family::TInf) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double g = v[k] - vstar[k];
      if (g > best) best = g;
    }
    return best;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  if (kind.family == StatKind::Family::T1) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double g = v[k] - vstar[k];
      if (g > 0.0) acc += g;
    }
    return acc * inv_n;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double g = v[k] - vstar[k];
    if (g > 0.0) acc += std::pow(g, kind.p);
  }
  return std::pow(acc * inv_n, 1.0 / kind.p);
}

}  // namespace detail

// sup-norm of the positive part of (identity - curve), over the node grid.
inline double t_inf(const LppCurve& curve) {
  return detail::observed_functional(StatKind::t_inf(), curve.values());
}

// L1 functional of (identity - step LPP) by the midpoint rule.
inline double t_one(const Sample& x, const Sample& y) {
  return detail::observed_functional(StatKind::t_one(), lpp_step(x, y).values());
}

// L^p functional, p >= 1; p = 1 reduces to t_one and p = inf to t_inf.
inline double t_p(const Sample& x, const Sample& y, double p) {
  return detail::observed_functional(StatKind::t_p(p), lpp_step(x, y).values());
}

}  // namespace lpp
