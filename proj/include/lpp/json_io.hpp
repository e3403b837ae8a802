#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpp/bootstrap.hpp"
#include "lpp/distributions.hpp"
#include "lpp/sim_harness.hpp"

namespace lpp {

inline nlohmann::json dist_to_json(const DistSpec& spec) {
  using nlohmann::json;
  struct Writer {
    json operator()(const Weibull& d) const {
      return {{"dist", "weibull"}, {"shape", d.shape}, {"scale", d.scale}};
    }
    json operator()(const UnitExponential&) const {
      return {{"dist", "unit_exponential"}};
    }
    json operator()(const SinghMaddala& d) const {
      return {{"dist", "singh_maddala"}, {"a", d.a}, {"q", d.q}, {"b", d.b}};
    }
    json operator()(const LognormalMixture& d) const {
      json comps = json::array();
      for (const auto& c : d.components)
        comps.push_back({{"meanlog", c.meanlog}, {"sdlog", c.sdlog}});
      return {{"dist", "lognormal_mixture"},
              {"weights", d.weights},
              {"components", comps}};
    }
  };
  return std::visit(Writer{}, spec.variant());
}

inline DistSpec dist_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("dist").get<std::string>();
  if (kind == "weibull")
    return DistSpec::weibull(j.at("shape").get<double>(),
                             j.at("scale").get<double>());
  if (kind == "unit_exponential") return DistSpec::unit_exponential();
  if (kind == "singh_maddala")
    return DistSpec::singh_maddala(j.at("a").get<double>(),
                                   j.at("q").get<double>(),
                                   j.value("b", 1.0));
  if (kind == "lognormal_mixture") {
    std::vector<double> weights = j.at("weights").get<std::vector<double>>();
    std::vector<LognormalComponent> comps;
    for (const auto& c : j.at("components"))
      comps.push_back({c.at("meanlog").get<double>(), c.at("sdlog").get<double>()});
    return DistSpec::lognormal_mixture(std::move(weights), std::move(comps));
  }
  throw std::invalid_argument("unknown dist kind: " + kind);
}

inline StatColumn stat_column_from_string(const std::string& s) {
  if (s == "tinf") return StatColumn::t_inf();
  if (s == "t1") return StatColumn::t_one();
  if (s.rfind("tp:", 0) == 0) return StatColumn::t_p(std::stod(s.substr(3)));
  if (s == "ksb3" || s == "ksb3:2") return StatColumn::ksb3(2);
  if (s == "ksb3_1" || s == "ksb3:1") return StatColumn::ksb3(1);
  throw std::invalid_argument("unknown stat column: " + s);
}

inline nlohmann::json outcome_to_json(const TestOutcome& out,
                                      bool include_replicates = false) {
  nlohmann::json j{
      {"schema", 1},
      {"stat", out.stat_label},
      {"raw", out.statistic.raw},
      {"scale", out.statistic.scale},
      {"statistic", out.statistic.scaled()},
      {"pvalue", out.pvalue},
      {"reject", out.reject},
      {"K", out.config.replicates},
      {"alpha", out.config.alpha},
      {"eps", out.config.eps},
      {"theta", out.config.theta ? nlohmann::json(*out.config.theta)
                                 : nlohmann::json(nullptr)},
      {"scheme", scheme_name(out.config.scheme)},
      {"seed", out.config.seed},
  };
  if (out.ksb3_order) j["order"] = *out.ksb3_order;
  if (out.ksb3_grid_size) j["r"] = *out.ksb3_grid_size;
  if (include_replicates) j["replicates"] = out.replicate_values;
  return j;
}

inline nlohmann::json experiment_to_json(const ExperimentSpec& spec) {
  nlohmann::json stats = nlohmann::json::array();
  for (const auto& s : spec.stats) {
    if (s.kind == StatColumn::Kind::Ksb3)
      stats.push_back(std::string("ksb3:") + std::to_string(s.ksb3_order));
    else
      stats.push_back(s.label());
  }
  return {
      {"schema", 1},
      {"name", spec.name},
      {"f", dist_to_json(spec.f)},
      {"g", dist_to_json(spec.g)},
      {"scheme", scheme_name(spec.scheme)},
      {"rho", spec.rho},
      {"n_list", spec.n_list},
      {"mc_runs", spec.mc_runs},
      {"replicates", spec.replicates},
      {"alpha", spec.alpha},
      {"eps", spec.eps},
      {"stats", stats},
      {"direction", direction_name(spec.direction)},
      {"theta",
       spec.theta ? nlohmann::json(*spec.theta) : nlohmann::json(nullptr)},
      {"master_seed", spec.master_seed},
  };
}

inline ExperimentSpec experiment_from_json(const nlohmann::json& j) {
  ExperimentSpec spec;
  spec.name = j.value("name", std::string("custom"));
  if (j.contains("f")) spec.f = dist_from_json(j.at("f"));
  if (j.contains("g")) spec.g = dist_from_json(j.at("g"));
  if (j.contains("scheme")) {
    const std::string s = j.at("scheme").get<std::string>();
    if (s == "independent") spec.scheme = Scheme::Independent;
    else if (s == "matched_pairs") spec.scheme = Scheme::MatchedPairs;
    else throw std::invalid_argument("unknown scheme: " + s);
  }
  spec.rho = j.value("rho", 0.0);
  if (j.contains("n_list"))
    spec.n_list = j.at("n_list").get<std::vector<std::size_t>>();
  spec.mc_runs = j.value("mc_runs", spec.mc_runs);
  spec.replicates = j.value("replicates", spec.replicates);
  spec.alpha = j.value("alpha", spec.alpha);
  spec.eps = j.value("eps", spec.eps);
  if (j.contains("stats")) {
    spec.stats.clear();
    for (const auto& s : j.at("stats"))
      spec.stats.push_back(stat_column_from_string(s.get<std::string>()));
  }
  if (j.contains("direction")) {
    const std::string d = j.at("direction").get<std::string>();
    if (d == "forward") spec.direction = Direction::Forward;
    else if (d == "reverse") spec.direction = Direction::Reverse;
    else if (d == "both") spec.direction = Direction::Both;
    else throw std::invalid_argument("unknown direction: " + d);
  }
  if (j.contains("theta") && !j.at("theta").is_null())
    spec.theta = j.at("theta").get<double>();
  spec.master_seed = j.value("master_seed", spec.master_seed);
  spec.validate();
  return spec;
}

inline nlohmann::json table_to_json(const RejectionTable& table) {
  return {
      {"schema", 1},
      {"spec", table.spec_name},
      {"hash", table.spec_hash},
      {"mc_runs", table.mc_runs},
      {"master_seed", table.master_seed},
      {"rows", table.rows},
      {"columns", table.columns},
      {"cells", table.cells},
      {"excluded", table.excluded},
      {"runtime_seconds", table.runtime_seconds},
  };
}

}  // namespace lpp
