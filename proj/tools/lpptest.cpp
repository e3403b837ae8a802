// Command-line front end: run a dominance test on user data, run built-in
// or custom simulation experiments, or emit curve points for plotting.
// JSON/CSV results go to stdout, diagnostics to stderr.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpp/bootstrap.hpp"
#include "lpp/distributions.hpp"
#include "lpp/json_io.hpp"
#include "lpp/ksb3.hpp"
#include "lpp/lorenz.hpp"
#include "lpp/sim_harness.hpp"
#include "lpp/special_functions.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 unreadable file, 3 non-numeric row,
// 4 negative value, 5 paired length mismatch, 6 invalid configuration.
struct CliError {
  int code;
  std::string message;
};

double parse_number(const std::string& token, const std::string& path, int line) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw CliError{3, path + ":" + std::to_string(line) +
                          ": not a numeric value: '" + token + "'"};
  return value;
}

struct FileColumns {
  std::vector<double> col1;
  std::vector<double> col2;  // empty for single-column files
};

FileColumns read_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{2, "cannot read file: " + path};
  FileColumns data;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // trim whitespace and tolerate CRLF
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      if (!data.col2.empty())
        throw CliError{3, path + ":" + std::to_string(lineno) +
                              ": expected two columns"};
      data.col1.push_back(parse_number(line, path, lineno));
    } else {
      if (data.col1.size() != data.col2.size())
        throw CliError{3, path + ":" + std::to_string(lineno) +
                              ": expected one column"};
      data.col1.push_back(parse_number(line.substr(0, comma), path, lineno));
      data.col2.push_back(parse_number(line.substr(comma + 1), path, lineno));
    }
  }
  if (data.col1.empty()) throw CliError{3, path + ": no data rows"};
  return data;
}

lpp::Sample make_sample(std::vector<double> values, const std::string& origin) {
  for (double v : values)
    if (v < 0.0)
      throw CliError{4, origin + ": negative values are not allowed"};
  try {
    return lpp::Sample(std::move(values));
  } catch (const std::exception& e) {
    throw CliError{4, origin + ": " + e.what()};
  }
}

lpp::DistSpec parse_dist_string(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  }
  try {
    if (kind == "exp") return lpp::DistSpec::unit_exponential();
    if (kind == "weibull" && args.size() == 2)
      return lpp::DistSpec::weibull(args[0], args[1]);
    if (kind == "sm" && args.size() == 3)
      return lpp::DistSpec::singh_maddala(args[0], args[1], args[2]);
    if (kind == "lnmix" && !args.empty() && args.size() % 3 == 0) {
      std::vector<double> weights;
      std::vector<lpp::LognormalComponent> comps;
      for (std::size_t i = 0; i < args.size(); i += 3) {
        weights.push_back(args[i]);
        comps.push_back({args[i + 1], args[i + 2]});
      }
      return lpp::DistSpec::lognormal_mixture(std::move(weights), std::move(comps));
    }
  } catch (const std::exception& e) {
    throw CliError{6, std::string("invalid distribution '") + text + "': " + e.what()};
  }
  throw CliError{1,
                 "unrecognized distribution '" + text +
                     "' (expected exp, weibull:a,b, sm:a,q,b or lnmix:w,m,s;...)"};
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw CliError{1, "empty list: " + text};
  return out;
}

int run_test_command(const std::string& x_path, const std::string& y_path,
                     const std::string& stat, int order,
                     std::optional<double> theta, bool fsd, bool paired,
                     double alpha, std::size_t boot, double eps,
                     std::uint64_t seed, unsigned workers, bool trace) {
  if (fsd) {
    if (theta) throw CliError{1, "--fsd and --theta are mutually exclusive"};
    theta = 50.0;
  }

  std::optional<lpp::Sample> x, y;
  const FileColumns xdata = read_value_file(x_path);
  if (paired && y_path.empty()) {
    if (xdata.col2.empty())
      throw CliError{3, x_path + ": --paired without --y needs two columns"};
    x = make_sample(xdata.col1, x_path);
    y = make_sample(xdata.col2, x_path);
  } else {
    if (y_path.empty()) throw CliError{1, "--y is required"};
    if (!xdata.col2.empty())
      throw CliError{3, x_path + ": expected a single column"};
    const FileColumns ydata = read_value_file(y_path);
    if (!ydata.col2.empty())
      throw CliError{3, y_path + ": expected a single column"};
    x = make_sample(xdata.col1, x_path);
    y = make_sample(ydata.col1, y_path);
    if (paired && x->size() != y->size())
      throw CliError{5, "--paired requires equal sample lengths (" +
                            std::to_string(x->size()) + " vs " +
                            std::to_string(y->size()) + ")"};
  }

  try {
    lpp::TestOutcome out;
    if (stat == "ksb3") {
      if (theta) throw CliError{1, "--theta is not supported with --stat ksb3"};
      lpp::Ksb3Config cfg;
      cfg.order = order;
      cfg.alpha = alpha;
      cfg.replicates = boot;
      cfg.scheme = paired ? lpp::Scheme::MatchedPairs : lpp::Scheme::Independent;
      cfg.seed = seed;
      out = paired ? lpp::ksb3_test(lpp::PairedSample(*x, *y), cfg, workers)
                   : lpp::ksb3_test(*x, *y, cfg, workers);
    } else {
      lpp::TestConfig cfg;
      if (stat == "tinf") cfg.stat = lpp::StatKind::t_inf();
      else if (stat == "t1") cfg.stat = lpp::StatKind::t_one();
      else if (stat.rfind("tp:", 0) == 0)
        cfg.stat = lpp::StatKind::t_p(std::stod(stat.substr(3)));
      else throw CliError{1, "unknown --stat value: " + stat};
      cfg.alpha = alpha;
      cfg.replicates = boot;
      cfg.eps = eps;
      cfg.theta = theta;
      cfg.scheme = paired ? lpp::Scheme::MatchedPairs : lpp::Scheme::Independent;
      cfg.seed = seed;
      out = paired ? lpp::bootstrap_pvalue(lpp::PairedSample(*x, *y), cfg, workers)
                   : lpp::bootstrap_pvalue(*x, *y, cfg, workers);
    }
    std::cout << lpp::outcome_to_json(out, trace).dump(2) << "\n";
    return 0;
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError{6, e.what()};
  }
}

int run_simulate_command(const std::string& spec_name,
                         const std::string& config_path, std::size_t runs,
                         std::size_t boot, const std::vector<std::size_t>& n_list,
                         std::optional<double> alpha,
                         std::optional<std::uint64_t> seed,
                         const std::string& out_dir, unsigned workers,
                         bool paper_scale) {
  std::vector<lpp::ExperimentSpec> specs;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw CliError{2, "cannot read config: " + config_path};
    try {
      specs.push_back(lpp::experiment_from_json(nlohmann::json::parse(in)));
    } catch (const std::exception& e) {
      throw CliError{6, std::string("invalid config: ") + e.what()};
    }
  } else if (spec_name == "all") {
    specs = lpp::builtin_specs();
  } else {
    auto found = lpp::find_builtin(spec_name);
    if (!found) throw CliError{6, "unknown spec name: " + spec_name};
    specs.push_back(*found);
  }

  for (auto& spec : specs) {
    if (paper_scale) {
      spec.mc_runs = 500;
      spec.replicates = 500;
      spec.n_list = {50, 100, 200, 500, 1000};
    } else {
      if (runs) spec.mc_runs = runs;
      if (boot) spec.replicates = boot;
      if (!n_list.empty()) spec.n_list = n_list;
    }
    if (alpha) spec.alpha = *alpha;
    if (seed) spec.master_seed = *seed;
  }

  std::filesystem::create_directories(out_dir);
  for (const auto& spec : specs) {
    lpp::RejectionTable table;
    try {
      table = lpp::run_experiment(spec, workers);
    } catch (const std::exception& e) {
      throw CliError{6, spec.name + ": " + e.what()};
    }
    const std::string base = spec.name + "_" + table.spec_hash;
    const auto csv_path = std::filesystem::path(out_dir) / (base + ".csv");
    const auto json_path = std::filesystem::path(out_dir) / (base + ".json");
    {
      std::ofstream csv(csv_path);
      csv << table.to_csv();
      std::ofstream js(json_path);
      nlohmann::json j = lpp::table_to_json(table);
      j["spec_config"] = lpp::experiment_to_json(spec);
      js << j.dump(2) << "\n";
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      std::cout << spec.name << " n=" << table.rows[i];
      for (std::size_t j = 0; j < table.columns.size(); ++j)
        std::cout << " " << table.columns[j] << "=" << table.cells[i][j];
      std::cout << "\n";
    }
    std::cerr << "wrote " << csv_path.string() << " (" << table.runtime_seconds
              << "s)\n";
  }
  return 0;
}

int run_curves_command(const std::string& x_path, const std::string& y_path,
                       const std::string& dist_f, const std::string& dist_g,
                       const std::string& theta_list, std::size_t grid) {
  std::cout << "theta,p,lpp,identity,pp\n";
  std::cout.precision(12);
  if (!x_path.empty() || !y_path.empty()) {
    if (x_path.empty() || y_path.empty())
      throw CliError{1, "curves needs both --x and --y (or --dist-f/--dist-g)"};
    const FileColumns xd = read_value_file(x_path);
    const FileColumns yd = read_value_file(y_path);
    const lpp::Sample x = make_sample(xd.col1, x_path);
    const lpp::Sample y = make_sample(yd.col1, y_path);
    std::vector<double> thetas = {1.0};
    if (!theta_list.empty()) thetas = parse_double_list(theta_list);
    const lpp::LppCurve pp = lpp::pp_plot(x, y);
    for (double theta : thetas) {
      lpp::LppCurve curve = [&] {
        try {
          return lpp::generalized_lpp(x, y, theta);
        } catch (const std::exception& e) {
          throw CliError{6, e.what()};
        }
      }();
      const double n = static_cast<double>(curve.n());
      for (std::size_t k = 0; k < curve.n(); ++k) {
        const double p = static_cast<double>(k + 1) / n;
        std::cout << theta << "," << p << "," << curve.values()[k] << "," << p
                  << "," << pp.values()[k] << "\n";
      }
    }
    return 0;
  }

  if (dist_f.empty() || dist_g.empty())
    throw CliError{1, "curves needs --x/--y or --dist-f/--dist-g"};
  if (!theta_list.empty())
    throw CliError{1, "--theta applies to sample inputs only"};
  const lpp::DistSpec f = parse_dist_string(dist_f);
  const lpp::DistSpec g = parse_dist_string(dist_g);

  // The closed-form curve is available for a Weibull first argument
  // against a unit exponential second argument.
  const auto* fw = std::get_if<lpp::Weibull>(&f.variant());
  const bool f_is_exp = std::holds_alternative<lpp::UnitExponential>(f.variant());
  const auto* gw = std::get_if<lpp::Weibull>(&g.variant());
  const bool g_is_exp =
      std::holds_alternative<lpp::UnitExponential>(g.variant()) ||
      (gw && gw->shape == 1.0 && gw->scale == 1.0);
  if (!(fw || f_is_exp) || !g_is_exp)
    throw CliError{6,
                   "closed-form curves need --dist-f weibull:a,b (or exp) and "
                   "--dist-g exp; use sample inputs otherwise"};
  const double a = fw ? fw->shape : 1.0;
  const double b = fw ? fw->scale : 1.0;
  for (std::size_t k = 0; k <= grid; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(grid);
    const double lppv = lpp::analytic_lpp_weibull_exp(a, b, p);
    const double ppv = p < 1.0 ? g.cdf(f.quantile(p)) : 1.0;
    std::cout << 1 << "," << p << "," << lppv << "," << p << "," << ppv << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bootstrap dominance tests built on the Lorenz P-P plot: second-order "
      "tests, power-transformed and first-order variants, an integrated-ECDF "
      "baseline, and a Monte Carlo rejection-rate harness."};
  app.require_subcommand(1);

  // test
  auto* test = app.add_subcommand("test", "Run a dominance test on two samples");
  std::string x_path, y_path, stat = "tinf";
  int order = 2;
  double theta_value = 0.0;
  bool have_theta = false, fsd = false, paired = false, trace = false;
  double alpha = 0.1, eps = 1e-4;
  std::size_t boot = 500;
  std::uint64_t seed = lpp::kDefaultSeed;
  unsigned workers = 1;
  test->add_option("--x", x_path, "CSV with the first sample (one value per line)")
      ->required();
  test->add_option("--y", y_path, "CSV with the second sample");
  test->add_option("--stat", stat, "Statistic: tinf, t1, tp:<p>, ksb3")
      ->capture_default_str();
  test->add_option("--order", order, "Integrated-ECDF order for ksb3 (1 or 2)")
      ->capture_default_str();
  test->add_option("--theta", theta_value, "Power transform exponent")
      ->each([&](const std::string&) { have_theta = true; });
  test->add_flag("--fsd", fsd, "First-order test (same as --theta 50)");
  test->add_flag("--paired", paired, "Matched-pairs sampling and resampling");
  test->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  test->add_option("--boot", boot, "Bootstrap replicates K")->capture_default_str();
  test->add_option("--eps", eps, "Common shift applied to both samples")
      ->capture_default_str();
  test->add_option("--seed", seed, "RNG seed")->capture_default_str();
  test->add_option("--workers", workers, "Worker threads")->capture_default_str();
  test->add_flag("--trace", trace, "Include replicate values in the JSON output");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run rejection-rate experiments");
  std::string spec_name, config_path, out_dir = ".", n_text;
  std::size_t runs = 0, sboot = 0;
  double salpha = -1.0;
  bool have_sseed = false, paper_scale = false;
  std::uint64_t sseed = 0;
  unsigned sworkers = 1;
  sim->add_option("--spec", spec_name, "Built-in spec name, or 'all'");
  sim->add_option("--config", config_path, "JSON experiment config");
  sim->add_option("--runs", runs, "Monte Carlo runs per cell");
  sim->add_option("--boot", sboot, "Bootstrap replicates per test");
  sim->add_option("--n", n_text, "Sample sizes, comma separated");
  sim->add_option("--alpha", salpha, "Significance level");
  sim->add_option("--seed", sseed, "Master seed")
      ->each([&](const std::string&) { have_sseed = true; });
  sim->add_option("--out", out_dir, "Output directory")->capture_default_str();
  sim->add_option("--workers", sworkers, "Worker threads")->capture_default_str();
  sim->add_flag("--paper-scale", paper_scale,
                "500 runs x 500 replicates at n = 50..1000 (multi-hour batch)");

  // curves
  auto* curves = app.add_subcommand("curves", "Emit curve points for plotting");
  std::string cx, cy, cdf, cdg, ctheta;
  std::size_t cgrid = 200;
  curves->add_option("--x", cx, "CSV with the first sample");
  curves->add_option("--y", cy, "CSV with the second sample");
  curves->add_option("--dist-f", cdf, "First distribution (closed-form mode)");
  curves->add_option("--dist-g", cdg, "Second distribution (closed-form mode)");
  curves->add_option("--theta", ctheta, "Exponent list, e.g. 1,2,5,10");
  curves->add_option("--grid", cgrid, "Grid size for closed-form curves")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test)
      return run_test_command(x_path, y_path, stat, order,
                              have_theta ? std::optional<double>(theta_value)
                                         : std::nullopt,
                              fsd, paired, alpha, boot, eps, seed, workers, trace);
    if (*sim) {
      if (spec_name.empty() == config_path.empty())
        throw CliError{1, "simulate needs exactly one of --spec or --config"};
      std::vector<std::size_t> n_list;
      if (!n_text.empty())
        for (double v : parse_double_list(n_text))
          n_list.push_back(static_cast<std::size_t>(v));
      return run_simulate_command(
          spec_name, config_path, runs, sboot, n_list,
          salpha >= 0 ? std::optional<double>(salpha) : std::nullopt,
          have_sseed ? std::optional<std::uint64_t>(sseed) : std::nullopt,
          out_dir, sworkers, paper_scale);
    }
    return run_curves_command(cx, cy, cdf, cdg, ctheta, cgrid);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  }
}
