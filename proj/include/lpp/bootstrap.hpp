#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpp/lorenz.hpp"
#include "lpp/parallel.hpp"
#include "lpp/rng.hpp"
#include "lpp/sample.hpp"
#include "lpp/statistics.hpp"

namespace lpp {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEEULL;

enum class Scheme { Independent, MatchedPairs };

inline const char* scheme_name(Scheme s) {
  return s == Scheme::Independent ? "independent" : "matched_pairs";
}

struct TestConfig {
  StatKind stat = StatKind::t_inf();
  double alpha = 0.1;
  std::size_t replicates = 500;  // K
  double eps = 1e-4;
  std::optional<double> theta;  // unset: plain second-order test; 50 ~ FSD
  Scheme scheme = Scheme::Independent;
  std::uint64_t seed = kDefaultSeed;
  bool shift_before_power = true;  // order of the eps shift and the power map

  void validate_and_normalize() {
    if (!(alpha > 0.0) || !(alpha < 0.5))
      throw std::invalid_argument("TestConfig: alpha must be in (0, 0.5)");
    if (replicates < 1)
      throw std::invalid_argument("TestConfig: replicates must be >= 1");
    if (!(eps >= 0.0)) throw std::invalid_argument("TestConfig: eps must be >= 0");
    if (theta) {
      if (!(*theta > 0.0))
        throw std::invalid_argument("TestConfig: theta must be > 0");
      if (*theta == 1.0) theta.reset();  // the power map is the identity
    }
  }
};

struct TestOutcome {
  std::string stat_label;
  FunctionalValue statistic;
  double pvalue = 1.0;
  bool reject = false;
  std::vector<double> replicate_values;  // unscaled, in replicate order
  TestConfig config;
  std::optional<int> ksb3_order;
  std::optional<std::size_t> ksb3_grid_size;
};

namespace detail {

// base_n draws with replacement, aggregated as multiplicities per index.
inline void fill_multinomial_counts(std::size_t base_n, RngStream& rng,
                                    std::vector<std::uint32_t>& counts) {
  counts.assign(base_n, 0);
  for (std::size_t k = 0; k < base_n; ++k)
    ++counts[rng.uniform_below(base_n)];
}

// Emits the resampled multiset in ascending order by walking the sorted
// source values with their multiplicities.
inline void emit_sorted_resample(std::span<const double> sorted_source,
                                 std::span<const std::uint32_t> counts,
                                 std::vector<double>& out) {
  out.clear();
  for (std::size_t i = 0; i < sorted_source.size(); ++i)
    for (std::uint32_t c = 0; c < counts[i]; ++c) out.push_back(sorted_source[i]);
}

// Same, with multiplicities indexed in original (pair) order and an
// argsort permutation of the source values.
inline void emit_sorted_resample_permuted(std::span<const double> source,
                                          std::span<const std::uint32_t> perm,
                                          std::span<const std::uint32_t> counts,
                                          std::vector<double>& out) {
  out.clear();
  for (std::size_t pos = 0; pos < source.size(); ++pos) {
    const std::uint32_t i = perm[pos];
    for (std::uint32_t c = 0; c < counts[i]; ++c) out.push_back(source[i]);
  }
}

struct NodeScratch {
  std::vector<double> s, t, v;
};

// Node values of the (optionally power-transformed) step LPP.
inline void build_lpp_nodes(std::span<const double> xs_sorted,
                            std::span<const double> ys_sorted, double theta,
                            NodeScratch& scratch, std::vector<double>& v) {
  if (theta == 1.0) {
    scaled_cumsum(xs_sorted, static_cast<double>(xs_sorted.size()), scratch.s);
    scaled_cumsum(ys_sorted, static_cast<double>(ys_sorted.size()), scratch.t);
    lpp_nodes_from_cumsums(scratch.s, scratch.t, v);
  } else {
    lpp_nodes_powered(xs_sorted, ys_sorted, theta, v);
  }
}

struct PreparedPair {
  std::vector<double> x_prepared;  // original order, after shift/power
  std::vector<double> y_prepared;
  std::vector<double> xs;  // sorted
  std::vector<double> ys;
  double theta = 1.0;  // exponent still to apply when building curves
};

inline PreparedPair prepare_inputs(const Sample& x, const Sample& y,
                                   const TestConfig& cfg) {
  PreparedPair prep;
  prep.x_prepared = x.values();
  prep.y_prepared = y.values();
  const double theta = cfg.theta.value_or(1.0);
  if (cfg.theta && !cfg.shift_before_power) {
    // power first, then shift; the transformed values are materialized
    for (auto* vec : {&prep.x_prepared, &prep.y_prepared})
      for (double& v : *vec) {
        v = std::pow(v, theta) + cfg.eps;
        if (!std::isfinite(v))
          throw std::runtime_error(
              "bootstrap: x^theta overflowed; rescale the inputs (the LPP is "
              "scale-free) or use the shift-before-power order");
      }
    prep.theta = 1.0;
  } else {
    for (auto* vec : {&prep.x_prepared, &prep.y_prepared})
      for (double& v : *vec) v += cfg.eps;
    prep.theta = theta;
  }
  prep.xs = prep.x_prepared;
  prep.ys = prep.y_prepared;
  std::sort(prep.xs.begin(), prep.xs.end());
  std::sort(prep.ys.begin(), prep.ys.end());
  return prep;
}

inline void argsort(std::span<const double> values,
                    std::vector<std::uint32_t>& perm) {
  perm.resize(values.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::stable_sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    return values[a] < values[b];
  });
}

inline TestOutcome run_lpp_bootstrap(const PreparedPair& prep,
                                     const TestConfig& cfg, bool paired,
                                     unsigned workers) {
  const std::size_t n = prep.xs.size(), m = prep.ys.size();

  NodeScratch obs_scratch;
  std::vector<double> observed_nodes;
  build_lpp_nodes(prep.xs, prep.ys, prep.theta, obs_scratch, observed_nodes);
  const double observed = observed_functional(cfg.stat, observed_nodes);
  if (std::isnan(observed))
    throw std::runtime_error("bootstrap: observed statistic is NaN");

  std::vector<std::uint32_t> perm_x, perm_y;
  if (paired) {
    argsort(prep.x_prepared, perm_x);
    argsort(prep.y_prepared, perm_y);
  }

  std::vector<double> replicate_values(cfg.replicates);
  parallel_for(cfg.replicates, workers, [&](std::size_t k) {
    thread_local std::vector<std::uint32_t> counts_x, counts_y;
    thread_local std::vector<double> rxs, rys, nodes;
    thread_local NodeScratch scratch;

    RngStream rng(derive_seed(cfg.seed, {k}));
    if (paired) {
      fill_multinomial_counts(n, rng, counts_x);
      emit_sorted_resample_permuted(prep.x_prepared, perm_x, counts_x, rxs);
      emit_sorted_resample_permuted(prep.y_prepared, perm_y, counts_x, rys);
    } else {
      fill_multinomial_counts(n, rng, counts_x);
      fill_multinomial_counts(m, rng, counts_y);
      emit_sorted_resample(prep.xs, counts_x, rxs);
      emit_sorted_resample(prep.ys, counts_y, rys);
    }
    build_lpp_nodes(rxs, rys, prep.theta, scratch, nodes);
    replicate_values[k] = difference_functional(cfg.stat, observed_nodes, nodes);
  });

  std::size_t exceed = 0;
  for (double rv : replicate_values) {
    if (std::isnan(rv))
      throw std::runtime_error("bootstrap: replicate statistic is NaN");
    if (rv > observed) ++exceed;
  }
  const double pvalue =
      static_cast<double>(exceed) / static_cast<double>(cfg.replicates);

  TestOutcome out;
  out.stat_label = cfg.stat.label();
  out.statistic = {observed, std::sqrt(effective_size_factor(n, m))};
  out.pvalue = pvalue;
  // Critical-value form of the decision: a zero observed functional means
  // the empirical curve itself exhibits dominance, which is never rejected
  // even if every replicate ties at zero (degenerate data).
  out.reject = pvalue < cfg.alpha && observed > 0.0;
  out.replicate_values = std::move(replicate_values);
  out.config = cfg;
  return out;
}

}  // namespace detail

// One bootstrap resample under the given scheme. Independent sampling
// draws each margin separately; matched pairs require the paired overload.
inline std::pair<Sample, Sample> resample(const Sample& x, const Sample& y,
                                          Scheme scheme, RngStream& rng) {
  if (scheme == Scheme::MatchedPairs)
    throw std::invalid_argument(
        "resample: matched-pairs resampling requires a PairedSample");
  std::vector<double> rx(x.size()), ry(y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    rx[i] = x.values()[rng.uniform_below(x.size())];
  for (std::size_t i = 0; i < y.size(); ++i)
    ry[i] = y.values()[rng.uniform_below(y.size())];
  return {Sample(std::move(rx)), Sample(std::move(ry))};
}

// Pairs are resampled whole: one index vector applied to both coordinates.
inline PairedSample resample(const PairedSample& xy, RngStream& rng) {
  const std::size_t n = xy.first.size();
  std::vector<double> rx(n), ry(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t idx = rng.uniform_below(n);
    rx[i] = xy.first.values()[idx];
    ry[i] = xy.second.values()[idx];
  }
  return PairedSample(Sample(std::move(rx)), Sample(std::move(ry)));
}

// Bootstrap p-value for the dominance test of x over y. The observed
// statistic is T applied to (identity - step LPP); each replicate applies
// the same functional to the difference between the observed curve and the
// resampled curve on the shared node grid. The p-value is the strict
// exceedance fraction, and every replicate draws its generator stream from
// (seed, replicate index), so outcomes do not depend on the worker count.
inline TestOutcome bootstrap_pvalue(const Sample& x, const Sample& y,
                                    TestConfig cfg, unsigned workers = 1) {
  cfg.validate_and_normalize();
  if (cfg.scheme == Scheme::MatchedPairs)
    throw std::invalid_argument(
        "bootstrap_pvalue: matched-pairs scheme requires a PairedSample");
  const auto prep = detail::prepare_inputs(x, y, cfg);
  return detail::run_lpp_bootstrap(prep, cfg, /*paired=*/false, workers);
}

inline TestOutcome bootstrap_pvalue(const PairedSample& xy, TestConfig cfg,
                                    unsigned workers = 1) {
  cfg.validate_and_normalize();
  if (cfg.scheme != Scheme::MatchedPairs)
    throw std::invalid_argument(
        "bootstrap_pvalue: paired input requires the matched-pairs scheme");
  const auto prep = detail::prepare_inputs(xy.first, xy.second, cfg);
  return detail::run_lpp_bootstrap(prep, cfg, /*paired=*/true, workers);
}

// Second-order dominance test: shift both samples by eps, then run the
// plain-LPP bootstrap. Testing the reverse hypothesis is done by swapping
// the arguments.
inline TestOutcome ssd_test(const Sample& x, const Sample& y, TestConfig cfg,
                            unsigned workers = 1) {
  cfg.theta.reset();
  return bootstrap_pvalue(x, y, std::move(cfg), workers);
}

inline TestOutcome ssd_test(const PairedSample& xy, TestConfig cfg,
                            unsigned workers = 1) {
  cfg.theta.reset();
  return bootstrap_pvalue(xy, std::move(cfg), workers);
}

// Transformed dominance test with the power map x -> x^theta; theta = 1
// reproduces ssd_test exactly and theta = 50 approximates the first-order
// test.
inline TestOutcome tsd_test(const Sample& x, const Sample& y, double theta,
                            TestConfig cfg, unsigned workers = 1) {
  cfg.theta = theta;
  return bootstrap_pvalue(x, y, std::move(cfg), workers);
}

inline TestOutcome tsd_test(const PairedSample& xy, double theta, TestConfig cfg,
                            unsigned workers = 1) {
  cfg.theta = theta;
  return bootstrap_pvalue(xy, std::move(cfg), workers);
}

}  // namespace lpp
