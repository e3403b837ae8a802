#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpp/bootstrap.hpp"
#include "lpp/distributions.hpp"
#include "lpp/ksb3.hpp"
#include "lpp/parallel.hpp"
#include "lpp/rng.hpp"

namespace lpp {

// One reported column of a rejection-rate table.
struct StatColumn {
  enum class Kind { TInf, T1, Tp, Ksb3 };

  Kind kind = Kind::TInf;
  double p = 2.0;      // Tp only
  int ksb3_order = 2;  // Ksb3 only

  static StatColumn t_inf() { return {Kind::TInf, 0.0, 0}; }
  static StatColumn t_one() { return {Kind::T1, 1.0, 0}; }
  static StatColumn t_p(double p) { return {Kind::Tp, p, 0}; }
  static StatColumn ksb3(int order) { return {Kind::Ksb3, 0.0, order}; }

  std::string label() const {
    switch (kind) {
      case Kind::TInf: return "tinf";
      case Kind::T1: return "t1";
      case Kind::Tp: return "tp:" + std::to_string(p);
      default: return ksb3_order == 1 ? "ksb3_1" : "ksb3";
    }
  }
};

enum class Direction { Forward, Reverse, Both };

inline const char* direction_name(Direction d) {
  switch (d) {
    case Direction::Forward: return "forward";
    case Direction::Reverse: return "reverse";
    default: return "both";
  }
}

// A full rejection-rate experiment: a pair of distributions, a sampling
// scheme, sample sizes, and the columns to report.
struct ExperimentSpec {
  std::string name;
  DistSpec f = DistSpec::weibull(1.0, 1.0);
  DistSpec g = DistSpec::weibull(1.0, 1.0);
  Scheme scheme = Scheme::Independent;
  double rho = 0.0;  // matched pairs only
  std::vector<std::size_t> n_list = {50, 100, 200, 500, 1000};
  std::size_t mc_runs = 500;
  std::size_t replicates = 500;  // bootstrap replicates per test
  double alpha = 0.1;
  double eps = 1e-4;
  std::vector<StatColumn> stats = {StatColumn::t_inf(), StatColumn::t_one(),
                                   StatColumn::ksb3(2)};
  Direction direction = Direction::Both;
  std::optional<double> theta;  // power transform; 50 approximates FSD
  std::uint64_t master_seed = kDefaultSeed;

  void validate() const {
    if (mc_runs < 1) throw std::invalid_argument("ExperimentSpec: mc_runs must be >= 1");
    if (n_list.empty()) throw std::invalid_argument("ExperimentSpec: n_list is empty");
    if (stats.empty()) throw std::invalid_argument("ExperimentSpec: no stats configured");
    if (scheme == Scheme::MatchedPairs && !(std::fabs(rho) < 1.0))
      throw std::invalid_argument("ExperimentSpec: |rho| must be < 1");
  }
};

struct RejectionTable {
  std::string spec_name;
  std::string spec_hash;
  std::size_t mc_runs = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::size_t> rows;                 // sample sizes
  std::vector<std::string> columns;              // e.g. tinf_fwd, tinf_rev
  std::vector<std::vector<double>> cells;        // [row][column]
  std::vector<std::vector<std::size_t>> excluded;  // failed runs per cell
  double runtime_seconds = 0.0;

  std::string to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "# spec=" << spec_name << " hash=" << spec_hash
       << " mc_runs=" << mc_runs << " master_seed=" << master_seed << "\n";
    bool any_excluded = false;
    for (const auto& row : excluded)
      for (std::size_t e : row)
        if (e) any_excluded = true;
    if (any_excluded) {
      os << "# excluded_runs:";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        os << " n=" << rows[i] << ":";
        for (std::size_t j = 0; j < columns.size(); ++j)
          os << (j ? "," : "") << excluded[i][j];
      }
      os << "\n";
    }
    os << "n";
    for (const auto& c : columns) os << "," << c;
    os << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << rows[i];
      for (std::size_t j = 0; j < columns.size(); ++j) os << "," << cells[i][j];
      os << "\n";
    }
    return os.str();
  }

  double cell(std::size_t n, const std::string& column) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i] == n)
        for (std::size_t j = 0; j < columns.size(); ++j)
          if (columns[j] == column) return cells[i][j];
    throw std::out_of_range("RejectionTable::cell: no such row or column");
  }
};

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string canonical_spec_string(const ExperimentSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << spec.name << "|" << spec.f.name() << "|" << spec.g.name() << "|"
     << scheme_name(spec.scheme) << "|" << spec.rho << "|";
  for (auto n : spec.n_list) os << n << ",";
  os << "|" << spec.mc_runs << "|" << spec.replicates << "|" << spec.alpha << "|"
     << spec.eps << "|";
  for (const auto& s : spec.stats) os << s.label() << ",";
  os << "|" << direction_name(spec.direction) << "|"
     << (spec.theta ? *spec.theta : 0.0) << "|" << spec.master_seed;
  return os.str();
}

}  // namespace detail

inline std::string spec_hash(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << std::hex << detail::fnv1a64(detail::canonical_spec_string(spec));
  return os.str();
}

namespace detail {

// Runs one configured column (statistic x direction) on a drawn pair.
// Reverse direction swaps the sample roles.
inline bool run_column(const ExperimentSpec& spec, const StatColumn& col,
                       bool reverse, const Sample& x, const Sample& y,
                       std::uint64_t seed) {
  const Sample& a = reverse ? y : x;
  const Sample& b = reverse ? x : y;
  if (col.kind == StatColumn::Kind::Ksb3) {
    Ksb3Config kcfg;
    kcfg.order = col.ksb3_order;
    kcfg.alpha = spec.alpha;
    kcfg.replicates = spec.replicates;
    kcfg.scheme = spec.scheme;
    kcfg.seed = seed;
    if (spec.scheme == Scheme::MatchedPairs)
      return ksb3_test(PairedSample(a, b), kcfg).reject;
    return ksb3_test(a, b, kcfg).reject;
  }
  TestConfig cfg;
  switch (col.kind) {
    case StatColumn::Kind::TInf: cfg.stat = StatKind::t_inf(); break;
    case StatColumn::Kind::T1: cfg.stat = StatKind::t_one(); break;
    default: cfg.stat = StatKind::t_p(col.p); break;
  }
  cfg.alpha = spec.alpha;
  cfg.replicates = spec.replicates;
  cfg.eps = spec.eps;
  cfg.theta = spec.theta;
  cfg.scheme = spec.scheme;
  cfg.seed = seed;
  if (spec.scheme == Scheme::MatchedPairs)
    return bootstrap_pvalue(PairedSample(a, b), cfg).reject;
  return bootstrap_pvalue(a, b, cfg).reject;
}

}  // namespace detail

// Runs the full experiment. Monte Carlo runs are independent tasks; one
// pair of samples is drawn per run and shared by every configured column,
// and every (run, column) test derives its generator stream from
// (master_seed, n, run index, column slot), so the table is identical for
// any worker count.
inline RejectionTable run_experiment(const ExperimentSpec& spec,
                                     unsigned workers = 1) {
  spec.validate();
  const auto t_start = std::chrono::steady_clock::now();

  const bool fwd = spec.direction != Direction::Reverse;
  const bool rev = spec.direction != Direction::Forward;
  std::vector<std::pair<std::size_t, bool>> column_slots;  // (stat idx, reverse)
  std::vector<std::string> column_names;
  for (std::size_t ci = 0; ci < spec.stats.size(); ++ci) {
    if (fwd) {
      column_slots.emplace_back(ci, false);
      column_names.push_back(spec.stats[ci].label() + "_fwd");
    }
    if (rev) {
      column_slots.emplace_back(ci, true);
      column_names.push_back(spec.stats[ci].label() + "_rev");
    }
  }

  RejectionTable table;
  table.spec_name = spec.name;
  table.spec_hash = spec_hash(spec);
  table.mc_runs = spec.mc_runs;
  table.master_seed = spec.master_seed;
  table.rows = spec.n_list;
  table.columns = column_names;

  constexpr std::uint64_t kSampleTag = 0x5a3d1e1dULL;
  enum : unsigned char { kAccept, kReject, kFailed };

  for (std::size_t n : spec.n_list) {
    std::vector<unsigned char> results(spec.mc_runs * column_slots.size(), kFailed);
    parallel_for(spec.mc_runs, workers, [&](std::size_t run) {
      unsigned char* row = results.data() + run * column_slots.size();
      try {
        RngStream data_rng(derive_seed(spec.master_seed, {n, run, kSampleTag}));
        std::optional<Sample> x, y;
        if (spec.scheme == Scheme::MatchedPairs) {
          PairedSamplerConfig pcfg{spec.rho, spec.f, spec.g, n};
          auto xy = sample_paired(pcfg, data_rng);
          x.emplace(std::move(xy.first));
          y.emplace(std::move(xy.second));
        } else {
          x.emplace(sample_iid(spec.f, n, data_rng));
          y.emplace(sample_iid(spec.g, n, data_rng));
        }
        for (std::size_t slot = 0; slot < column_slots.size(); ++slot) {
          const auto [ci, reverse] = column_slots[slot];
          const std::uint64_t seed = derive_seed(spec.master_seed, {n, run, slot});
          try {
            row[slot] = detail::run_column(spec, spec.stats[ci], reverse, *x, *y,
                                           seed)
                            ? kReject
                            : kAccept;
          } catch (const std::exception&) {
            row[slot] = kFailed;
          }
        }
      } catch (const std::exception&) {
        // sampling failed: every cell of this run stays excluded
      }
    });

    std::vector<double> row_cells(column_slots.size(), 0.0);
    std::vector<std::size_t> row_excluded(column_slots.size(), 0);
    for (std::size_t slot = 0; slot < column_slots.size(); ++slot) {
      std::size_t rejects = 0, failed = 0;
      for (std::size_t run = 0; run < spec.mc_runs; ++run) {
        const unsigned char r = results[run * column_slots.size() + slot];
        if (r == kReject) ++rejects;
        else if (r == kFailed) ++failed;
      }
      const std::size_t completed = spec.mc_runs - failed;
      row_cells[slot] = completed
                            ? static_cast<double>(rejects) / static_cast<double>(completed)
                            : 0.0;
      row_excluded[slot] = failed;
    }
    table.cells.push_back(std::move(row_cells));
    table.excluded.push_back(std::move(row_excluded));
  }

  table.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return table;
}

// The shipped experiment designs. Names table1..table16 follow the layout
// of the reported tables; a few extra parameter sets are included under
// descriptive names.
inline std::vector<ExperimentSpec> builtin_specs() {
  std::vector<ExperimentSpec> specs;
  const DistSpec unit_weibull = DistSpec::weibull(1.0, 1.0);

  auto weibull_vs_unit = [&](std::string name, double a, Direction dir) {
    ExperimentSpec s;
    s.name = std::move(name);
    s.f = DistSpec::weibull(a, weibull_unit_mean_scale(a));
    s.g = unit_weibull;
    s.direction = dir;
    return s;
  };

  specs.push_back(weibull_vs_unit("table1", 1.0, Direction::Forward));
  specs.push_back(weibull_vs_unit("table2", 1.1, Direction::Both));
  specs.push_back(weibull_vs_unit("table3", 1.2, Direction::Both));
  specs.push_back(weibull_vs_unit("table4", 1.3, Direction::Both));

  auto lognormal_mix = [&](std::string name, double second_sdlog) {
    ExperimentSpec s;
    s.name = std::move(name);
    s.f = DistSpec::lognormal_mixture({0.9, 0.1},
                                      {{0.85, 0.4}, {0.4, second_sdlog}});
    s.g = DistSpec::lognormal_mixture({1.0}, {{0.86, 0.6}});
    s.direction = Direction::Both;
    return s;
  };
  specs.push_back(lognormal_mix("table5", 0.4));
  specs.push_back(lognormal_mix("table5_alt", 0.9));

  auto singh_maddala = [&](std::string name, double q, Scheme scheme, double rho) {
    ExperimentSpec s;
    s.name = std::move(name);
    s.f = DistSpec::singh_maddala(1.5, q, 1.0);
    s.g = DistSpec::singh_maddala(1.0, q, 1.0);
    s.scheme = scheme;
    s.rho = rho;
    s.direction = Direction::Both;
    return s;
  };
  specs.push_back(singh_maddala("table6", 1.8, Scheme::Independent, 0.0));
  specs.push_back(singh_maddala("table7", 1.5, Scheme::Independent, 0.0));
  specs.push_back(singh_maddala("table8", 1.2, Scheme::Independent, 0.0));
  specs.push_back(singh_maddala("table9", 1.8, Scheme::MatchedPairs, 0.25));
  specs.push_back(singh_maddala("table10", 1.8, Scheme::MatchedPairs, 0.5));
  specs.push_back(singh_maddala("table11", 1.8, Scheme::MatchedPairs, 0.75));
  specs.push_back(singh_maddala("table12", 1.2, Scheme::MatchedPairs, 0.25));
  specs.push_back(singh_maddala("table13", 1.2, Scheme::MatchedPairs, 0.5));
  specs.push_back(singh_maddala("sm12_rho075", 1.2, Scheme::MatchedPairs, 0.75));

  auto fsd = [&](std::string name, double q) {
    auto s = singh_maddala(std::move(name), q, Scheme::Independent, 0.0);
    s.theta = 50.0;
    s.stats = {StatColumn::t_inf(), StatColumn::t_one(), StatColumn::ksb3(1)};
    return s;
  };
  specs.push_back(fsd("table14", 1.2));
  specs.push_back(fsd("table15", 1.5));
  specs.push_back(fsd("table16", 1.8));

  for (double a : {1.25, 1.5, 1.75, 2.0}) {
    std::string name = "weibull_a" + std::to_string(static_cast<int>(a * 100));
    specs.push_back(weibull_vs_unit(std::move(name), a, Direction::Both));
  }
  return specs;
}

inline std::optional<ExperimentSpec> find_builtin(const std::string& name) {
  for (auto& s : builtin_specs())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace lpp
