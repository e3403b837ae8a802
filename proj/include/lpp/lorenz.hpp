#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpp/sample.hpp"

namespace lpp {

// Empirical unscaled Lorenz curve: the piecewise linear function joining
// (k/n, (1/n) * sum of the k smallest observations), k = 0..n. Increasing
// and convex on [0,1], ends at the sample mean.
class LorenzCurve {
 public:
  explicit LorenzCurve(const Sample& x) : n_(x.size()), nodes_(x.size() + 1) {
    nodes_[0] = 0.0;
    double acc = 0.0;
    const auto& xs = x.sorted();
    for (std::size_t k = 0; k < n_; ++k) {
      acc += xs[k];
      nodes_[k + 1] = acc / static_cast<double>(n_);
    }
  }

  std::size_t size() const { return n_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double mean() const { return nodes_.back(); }

  // Linear interpolation on [0,1]; +infinity beyond 1.
  double value(double p) const {
    if (!(p >= 0.0)) throw std::domain_error("LorenzCurve::value: p must be >= 0");
    if (p > 1.0) return std::numeric_limits<double>::infinity();
    const double np = p * static_cast<double>(n_);
    std::size_t k = static_cast<std::size_t>(np);
    if (k >= n_) return nodes_.back();
    return nodes_[k] + (np - static_cast<double>(k)) * (nodes_[k + 1] - nodes_[k]);
  }

  // Right-continuous generalized inverse, inf{p : L(p) > t}; equals 1 for
  // any level at or above the mean.
  double inverse(double t) const {
    if (t >= nodes_.back()) return 1.0;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - nodes_.begin());
    // nodes_[j-1] <= t < nodes_[j], a strictly rising segment
    const double frac = (t - nodes_[j - 1]) / (nodes_[j] - nodes_[j - 1]);
    return (static_cast<double>(j - 1) + frac) / static_cast<double>(n_);
  }

 private:
  std::size_t n_;
  std::vector<double> nodes_;
};

// Step-form inverse Lorenz curve of a sample: value j/m on the interval
// between consecutive cumulative means, resolved at breakpoints by
// inf{u : step-Lorenz(u) > t}, and 1 for any level at or above the mean.
class StepLorenzInverse {
 public:
  explicit StepLorenzInverse(const Sample& y)
      : m_(y.size()), breakpoints_(y.size()) {
    double acc = 0.0;
    const auto& ys = y.sorted();
    for (std::size_t j = 0; j < m_; ++j) {
      acc += ys[j];
      breakpoints_[j] = acc / static_cast<double>(m_);
    }
  }

  std::size_t size() const { return m_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double mean() const { return breakpoints_.back(); }

  double value(double t) const {
    const auto it =
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    const std::size_t count = static_cast<std::size_t>(it - breakpoints_.begin());
    return static_cast<double>(count) / static_cast<double>(m_);
  }

 private:
  std::size_t m_;
  std::vector<double> breakpoints_;
};

// Step Lorenz P-P plot on the grid {k/n}, with values in {j/m}. Evaluation
// between grid points follows the floor(n t)+1 cumulative-sum rule, so the
// curve is constant on ((k-1)/n, k/n) with value v_k.
class LppCurve {
 public:
  LppCurve(std::size_t n, std::size_t m, std::vector<double> values, double nu)
      : n_(n), m_(m), values_(std::move(values)), nu_hat_(nu) {}

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  // values()[i] is the node value at p = (i+1)/n.
  const std::vector<double>& values() const { return values_; }
  double nu_hat() const { return nu_hat_; }

  double value(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("LppCurve::value: t must be >= 0");
    std::size_t idx = static_cast<std::size_t>(t * static_cast<double>(n_));
    if (idx >= n_) idx = n_ - 1;
    return values_[idx];
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> values_;
  double nu_hat_;
};

namespace detail {

// out[k] = (sum of the first k+1 entries) / denom, for sorted input.
inline void scaled_cumsum(std::span<const double> sorted, double denom,
                          std::vector<double>& out) {
  out.resize(sorted.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    acc += sorted[i];
    out[i] = acc / denom;
  }
}

// Node values of the step LPP from the two cumulative-mean arrays:
// v_k = #{j : t_j <= s_k} / m, via a single merge pass.
inline void lpp_nodes_from_cumsums(const std::vector<double>& s,
                                   const std::vector<double>& t,
                                   std::vector<double>& v) {
  const std::size_t n = s.size(), m = t.size();
  v.resize(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    while (j < m && t[j] <= s[k]) ++j;
    v[k] = static_cast<double>(j) / static_cast<double>(m);
  }
}

inline double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Node values of the step LPP of the elementwise theta-powers, computed in
// the log domain. Cumulative sums of x_i^theta are represented by their
// logarithms (cumulative log-sum-exp after rescaling by the pooled max),
// so arbitrarily large exponents neither overflow nor collapse small
// values to zero. Comparisons between the two sides are unchanged because
// log is increasing.
inline void lpp_nodes_powered(std::span<const double> xs_sorted,
                              std::span<const double> ys_sorted, double theta,
                              std::vector<double>& v) {
  const std::size_t n = xs_sorted.size(), m = ys_sorted.size();
  v.resize(n);
  const double xmax = xs_sorted.back(), ymax = ys_sorted.back();
  const double pooled = std::max(xmax, ymax);
  if (pooled == 0.0) {  // all observations zero on both sides
    std::fill(v.begin(), v.end(), 1.0);
    return;
  }
  const double logu = std::log(pooled);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double log_n = std::log(static_cast<double>(n));
  const double log_m = std::log(static_cast<double>(m));

  std::vector<double> lt(m);
  double acc = neg_inf;
  for (std::size_t j = 0; j < m; ++j) {
    const double ly =
        ys_sorted[j] == 0.0 ? neg_inf : theta * (std::log(ys_sorted[j]) - logu);
    acc = logaddexp(acc, ly);
    lt[j] = acc - log_m;
  }

  std::size_t j = 0;
  acc = neg_inf;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx =
        xs_sorted[k] == 0.0 ? neg_inf : theta * (std::log(xs_sorted[k]) - logu);
    acc = logaddexp(acc, lx);
    const double ls = acc - log_n;
    while (j < m && lt[j] <= ls) ++j;
    v[k] = static_cast<double>(j) / static_cast<double>(m);
  }
}

}  // namespace detail

inline LorenzCurve empirical_lorenz(const Sample& x) { return LorenzCurve(x); }

inline StepLorenzInverse step_lorenz_inverse(const Sample& y) {
  return StepLorenzInverse(y);
}

// Step LPP of x against y: the step inverse Lorenz curve of y composed
// with the step Lorenz curve of x.
inline LppCurve lpp_step(const Sample& x, const Sample& y) {
  std::vector<double> s, t, v;
  detail::scaled_cumsum(x.sorted(), static_cast<double>(x.size()), s);
  detail::scaled_cumsum(y.sorted(), static_cast<double>(y.size()), t);
  detail::lpp_nodes_from_cumsums(s, t, v);
  const double nu = std::min(1.0, LorenzCurve(x).inverse(t.back()));
  return LppCurve(x.size(), y.size(), std::move(v), nu);
}

// Piecewise linear LPP at a single point: the linear-interpolation Lorenz
// inverse of y composed with the linear Lorenz curve of x.
inline double lpp_linear(const LorenzCurve& lx, const LorenzCurve& ly, double p) {
  return ly.inverse(lx.value(p));
}

inline double lpp_linear(const Sample& x, const Sample& y, double p) {
  return lpp_linear(LorenzCurve(x), LorenzCurve(y), p);
}

// Step LPP of the elementwise theta-powers of both samples. theta = 1
// reproduces lpp_step exactly; large theta approaches the classic P-P plot.
inline LppCurve generalized_lpp(const Sample& x, const Sample& y, double theta) {
  if (!(theta > 0.0))
    throw std::domain_error("generalized_lpp: theta must be > 0");
  if (theta == 1.0) return lpp_step(x, y);
  std::vector<double> v;
  detail::lpp_nodes_powered(x.sorted(), y.sorted(), theta, v);
  // nu of the transformed samples, from rescaled plain powers
  const double pooled = std::max(x.sorted().back(), y.sorted().back());
  double nu = 1.0;
  if (pooled > 0.0) {
    std::vector<double> px(x.size()), py(y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      px[i] = std::pow(x.sorted()[i] / pooled, theta);
    double ymean = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      ymean += std::pow(y.sorted()[i] / pooled, theta);
    ymean /= static_cast<double>(y.size());
    nu = std::min(1.0, LorenzCurve(Sample(std::move(px))).inverse(ymean));
  }
  return LppCurve(x.size(), y.size(), std::move(v), nu);
}

// Classic empirical P-P plot on the grid {k/n}: the fraction of y
// observations not exceeding the k-th order statistic of x.
inline LppCurve pp_plot(const Sample& x, const Sample& y) {
  const auto& xs = x.sorted();
  const auto& ys = y.sorted();
  const std::size_t n = xs.size(), m = ys.size();
  std::vector<double> v(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    while (j < m && ys[j] <= xs[k]) ++j;
    v[k] = static_cast<double>(j) / static_cast<double>(m);
  }
  return LppCurve(n, m, std::move(v), 1.0);
}

// Both samples shifted by the same non-negative amount. Dominance at the
// second order is invariant under a common shift, while the unscaled
// Lorenz curves themselves are not.
inline std::pair<Sample, Sample> shift_samples(const Sample& x, const Sample& y,
                                               double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("shift_samples: eps must be >= 0");
  std::vector<double> xs = x.values(), ys = y.values();
  for (double& v : xs) v += eps;
  for (double& v : ys) v += eps;
  return {Sample(std::move(xs)), Sample(std::move(ys))};
}

// Two-column CSV export used by the plotting front end.
inline void write_curve_csv(std::ostream& os, std::span<const double> p,
                            std::span<const double> value) {
  os << "p,value\n";
  for (std::size_t i = 0; i < p.size(); ++i) os << p[i] << "," << value[i] << "\n";
}

}  // namespace lpp
