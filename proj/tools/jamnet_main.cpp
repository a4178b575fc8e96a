// jamnet: scenario-driven audit tool for the detection-network jamming game.
//
// Subcommands: aggregate, equilibrium, dynamics, saddle, mixed, mc, sweep.
// Exit codes: 0 success, 2 input/validation error, 3 internal error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jamnet/io.hpp"

namespace {

using jamnet::ChannelAggregate;
using jamnet::GaussianJammerCovariance;
using jamnet::PureStrategyProfile;
using jamnet::ValidationError;
using jamnet::VectorXd;
using jamnet::io::format_double;
using jamnet::io::json;
using jamnet::io::Scenario;

struct GlobalOptions {
  std::string scenario_path;
  std::string output = "json";
  std::string out = "-";
};

VectorXd parse_vector(const std::string& text) {
  VectorXd values(0);
  if (text.empty()) {
    return values;
  }
  std::vector<double> parsed;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v)) {
        throw std::invalid_argument(item);
      }
      parsed.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse '" + item + "' as a number in list '" + text + "'");
    }
  }
  values.resize(static_cast<Eigen::Index>(parsed.size()));
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    values[static_cast<Eigen::Index>(i)] = parsed[i];
  }
  return values;
}

void emit(const std::string& text, const std::string& out) {
  if (out == "-" || out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) {
    throw ValidationError("cannot open output file: " + out);
  }
  file << text;
}

void emit_report(const json& report, const std::string& csv, const GlobalOptions& global) {
  if (global.output == "csv") {
    emit(csv, global.out);
  } else {
    emit(report.dump(2) + "\n", global.out);
  }
}

std::string csv_row(const std::vector<std::string>& header, const std::vector<std::string>& row) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += i + 1 < header.size() ? ',' : '\n';
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    out += row[i];
    out += i + 1 < row.size() ? ',' : '\n';
  }
  return out;
}

Scenario load(const GlobalOptions& global) {
  if (global.scenario_path.empty()) {
    throw ValidationError("--scenario is required");
  }
  return jamnet::io::load_scenario(global.scenario_path);
}

VectorXd epsilon_or_zero(const std::optional<std::string>& flag, const ChannelAggregate& agg) {
  if (!flag) {
    return VectorXd::Zero(agg.b.size());
  }
  return parse_vector(*flag);
}

// --- subcommand bodies -----------------------------------------------------

void cmd_aggregate(const GlobalOptions& global) {
  const Scenario scenario = load(global);
  const ChannelAggregate agg = jamnet::aggregate(scenario.network, scenario.priors);

  json report = jamnet::io::to_json(agg);
  const bool coupled = agg.b_norm2() > 0.0;
  double low = std::nan("");
  double high = std::nan("");
  if (coupled) {
    const jamnet::Interval window = jamnet::feasibility_window(agg, scenario.budget);
    low = window.low;
    high = window.high;
    report["feasibility_window"] = json{{"low", low}, {"high", high}};
  } else {
    report["feasibility_window"] = nullptr;
  }

  std::vector<std::string> header{"a", "sigma2", "c", "window_low", "window_high"};
  std::vector<std::string> row{format_double(agg.a), format_double(agg.sigma2),
                               format_double(agg.c), format_double(low), format_double(high)};
  for (Eigen::Index j = 0; j < agg.b.size(); ++j) {
    header.push_back("b" + std::to_string(j));
    row.push_back(format_double(agg.b[j]));
  }
  emit_report(report, csv_row(header, row), global);
}

void cmd_equilibrium(const GlobalOptions& global, const std::optional<std::string>& epsilon) {
  const Scenario scenario = load(global);
  const ChannelAggregate agg = jamnet::aggregate(scenario.network, scenario.priors);
  const jamnet::EquilibriumParameter param{epsilon_or_zero(epsilon, agg)};
  const PureStrategyProfile profile = jamnet::equilibrium_family(param, agg, scenario.budget);
  const double pe = jamnet::error_probability(profile, agg, scenario.priors);
  const bool member =
      jamnet::is_in_family(profile, agg, scenario.budget, scenario.game.identity_tol);

  json report{{"profile", jamnet::io::to_json(profile)}, {"pe", pe}, {"in_family", member}};
  std::vector<std::string> header{"lambda", "pe", "in_family"};
  std::vector<std::string> row{format_double(profile.threshold), format_double(pe),
                               member ? "true" : "false"};
  for (Eigen::Index j = 0; j < profile.w.size(); ++j) {
    header.push_back("w" + std::to_string(j));
    row.push_back(format_double(profile.w[j]));
  }
  emit_report(report, csv_row(header, row), global);
}

void cmd_dynamics(const GlobalOptions& global, double lambda0,
                  const std::optional<std::string>& w0, const std::string& order,
                  int max_half_steps, const std::string& jammer_mode) {
  const Scenario scenario = load(global);
  const ChannelAggregate agg = jamnet::aggregate(scenario.network, scenario.priors);

  PureStrategyProfile initial;
  initial.threshold = lambda0;
  initial.w = w0 ? parse_vector(*w0) : VectorXd::Zero(agg.b.size());

  jamnet::PlayOrder play_order;
  if (order == "network_first") {
    play_order = jamnet::PlayOrder::network_first;
  } else if (order == "jammer_first") {
    play_order = jamnet::PlayOrder::jammer_first;
  } else {
    throw ValidationError("--order must be network_first or jammer_first");
  }
  jamnet::JammerMode mode;
  if (jammer_mode == "stationary") {
    mode = jamnet::JammerMode::stationary;
  } else if (jammer_mode == "empirical") {
    mode = jamnet::JammerMode::empirical;
  } else {
    throw ValidationError("--jammer-mode must be stationary or empirical");
  }
  if (max_half_steps < 0) {
    throw ValidationError("--max-half-steps must be non-negative");
  }

  const jamnet::DynamicsTrace trace = jamnet::run_dynamics(
      initial, play_order, agg, scenario.priors, scenario.budget, max_half_steps, mode);
  emit_report(jamnet::io::to_json(trace, agg, scenario.priors),
              jamnet::io::to_csv(trace, agg, scenario.priors), global);
}

void cmd_saddle(const GlobalOptions& global, const std::optional<std::string>& epsilon,
                std::optional<int> samples, std::optional<int> lambda_grid, std::uint64_t seed,
                const std::vector<std::string>& probes) {
  const Scenario scenario = load(global);
  const ChannelAggregate agg = jamnet::aggregate(scenario.network, scenario.priors);
  const jamnet::EquilibriumParameter param{epsilon_or_zero(epsilon, agg)};
  const PureStrategyProfile profile = jamnet::equilibrium_family(param, agg, scenario.budget);

  jamnet::SaddleAuditSpec spec;
  spec.threshold_bound = scenario.game.threshold_bound;
  spec.lambda_grid = lambda_grid ? *lambda_grid : scenario.game.lambda_grid;
  spec.w_samples = samples ? *samples : scenario.game.w_samples;
  if (spec.w_samples < 1) {
    throw ValidationError("--samples must be >= 1");
  }
  if (spec.lambda_grid < 3) {
    throw ValidationError("--lambda-grid must be >= 3");
  }
  spec.seed = seed;
  spec.tolerance = scenario.game.identity_tol;
  for (const std::string& probe : probes) {
    spec.extra_probes.push_back(parse_vector(probe));
  }

  const jamnet::SaddleReport report =
      jamnet::verify_saddle(profile, agg, scenario.priors, scenario.budget, spec);

  std::vector<std::string> header{"lambda",
                                  "equilibrium_value",
                                  "fc_side_max_violation",
                                  "fc_witness_lambda",
                                  "jammer_side_max_violation",
                                  "samples",
                                  "holds_fc_side",
                                  "holds_jammer_side"};
  std::vector<std::string> row{format_double(report.profile.threshold),
                               format_double(report.equilibrium_value),
                               format_double(report.fc_side_max_violation),
                               format_double(report.fc_witness_threshold),
                               format_double(report.jammer_side_max_violation),
                               std::to_string(report.samples),
                               report.holds_fc_side ? "true" : "false",
                               report.holds_jammer_side ? "true" : "false"};
  for (Eigen::Index j = 0; j < report.jammer_witness_w.size(); ++j) {
    header.push_back("witness_w" + std::to_string(j));
    row.push_back(format_double(report.jammer_witness_w[j]));
  }
  emit_report(jamnet::io::to_json(report), csv_row(header, row), global);
}

void cmd_mixed(const GlobalOptions& global, const std::string& covariance_path) {
  const Scenario scenario = load(global);
  const ChannelAggregate agg = jamnet::aggregate(scenario.network, scenario.priors);
  const GaussianJammerCovariance cov{jamnet::io::load_covariance(covariance_path),
                                     scenario.budget.power};
  const jamnet::MixedComparison cmp = jamnet::compare_mixed_vs_pure(cov, agg, scenario.priors);
  const double threshold = jamnet::mixed_best_threshold(cov, agg, scenario.priors);
  const double variance = jamnet::fused_jamming_variance(cov, agg);

  json report = jamnet::io::to_json(cmp);
  report["threshold"] = threshold;
  report["fused_variance"] = variance;

  const std::vector<std::string> header{"mixed_utility", "pure_value", "advantage", "threshold",
                                        "fused_variance"};
  const std::vector<std::string> row{format_double(cmp.mixed_utility),
                                     format_double(cmp.pure_value), format_double(cmp.advantage),
                                     format_double(threshold), format_double(variance)};
  emit_report(report, csv_row(header, row), global);
}

void cmd_mc(const GlobalOptions& global, double lambda, const std::optional<std::string>& w_flag,
            const std::optional<std::string>& covariance_path, std::int64_t trials,
            std::uint64_t seed, int workers) {
  const Scenario scenario = load(global);
  const ChannelAggregate agg = jamnet::aggregate(scenario.network, scenario.priors);
  if (w_flag && covariance_path) {
    throw ValidationError("--w and --covariance are mutually exclusive");
  }

  jamnet::MonteCarloEstimate estimate;
  double closed_form = 0.0;
  if (covariance_path) {
    const GaussianJammerCovariance cov{jamnet::io::load_covariance(*covariance_path),
                                       scenario.budget.power};
    closed_form = jamnet::gamma_functional(lambda, cov, agg, scenario.priors);
    estimate = jamnet::simulate_mixed_error(lambda, cov, scenario.network, scenario.priors, trials,
                                            seed, workers);
  } else {
    PureStrategyProfile profile;
    profile.threshold = lambda;
    profile.w = w_flag ? parse_vector(*w_flag) : VectorXd::Zero(agg.b.size());
    closed_form = jamnet::error_probability(profile, agg, scenario.priors);
    estimate =
        jamnet::simulate_error(profile, scenario.network, scenario.priors, trials, seed, workers);
  }

  const double abs_diff = std::abs(estimate.estimate - closed_form);
  const double four_stderr = 4.0 * estimate.std_error;
  const bool pass = abs_diff <= four_stderr;

  json report = jamnet::io::to_json(estimate);
  report["closed_form"] = closed_form;
  report["abs_diff"] = abs_diff;
  report["four_stderr"] = four_stderr;
  report["pass"] = pass;

  const std::vector<std::string> header{"estimate",    "trials",   "stderr",      "seed",
                                        "closed_form", "abs_diff", "four_stderr", "pass"};
  const std::vector<std::string> row{format_double(estimate.estimate),
                                     std::to_string(estimate.trials),
                                     format_double(estimate.std_error),
                                     std::to_string(estimate.seed),
                                     format_double(closed_form),
                                     format_double(abs_diff),
                                     format_double(four_stderr),
                                     pass ? "true" : "false"};
  emit_report(report, csv_row(header, row), global);
}

void apply_sweep_value(Scenario& scenario, const std::string& param, double value) {
  if (param == "jammer.power") {
    if (value < 0.0) {
      throw jamnet::ParameterOutOfRange("jammer.power must be non-negative");
    }
    scenario.budget.power = value;
  } else if (param == "priors.pi0") {
    scenario.priors = jamnet::make_priors(value);
  } else if (param == "network.sigma_s") {
    scenario.network.sigma_s = value;
  } else if (param == "network.sigma_fc") {
    scenario.network.sigma_fc = value;
  } else if (param == "game.threshold_bound") {
    scenario.game.threshold_bound = value;
  } else {
    throw ValidationError("unknown sweep parameter path: " + param +
                          " (expected jammer.power, priors.pi0, network.sigma_s, "
                          "network.sigma_fc or game.threshold_bound)");
  }
}

void cmd_sweep(const GlobalOptions& global, const std::string& param, const std::string& values,
               const std::string& outputs) {
  const Scenario base = load(global);
  const VectorXd points = parse_vector(values);
  if (points.size() == 0) {
    throw ValidationError("--values must list at least one number");
  }

  std::vector<std::string> kinds;
  {
    std::stringstream stream(outputs);
    std::string item;
    while (std::getline(stream, item, ',')) {
      if (!item.empty()) {
        kinds.push_back(item);
      }
    }
  }
  if (kinds.empty()) {
    kinds.push_back("equilibrium_error");
  }
  for (const std::string& kind : kinds) {
    if (kind != "equilibrium_error" && kind != "mixed_utility_max" && kind != "window" &&
        kind != "aggregate") {
      throw ValidationError("unknown sweep output kind: " + kind +
                            " (expected equilibrium_error, mixed_utility_max, window, aggregate)");
    }
  }

  std::vector<std::string> header{param};
  for (const std::string& kind : kinds) {
    if (kind == "window") {
      header.push_back("window_low");
      header.push_back("window_high");
    } else if (kind == "aggregate") {
      header.push_back("a");
      header.push_back("sigma2");
      header.push_back("c");
    } else {
      header.push_back(kind);
    }
  }

  std::vector<std::vector<std::string>> rows;
  json json_rows = json::array();
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    const double value = points[i];
    Scenario point = base;
    ChannelAggregate agg;
    try {
      apply_sweep_value(point, param, value);
      // Full re-validation per sweep point.
      agg = jamnet::aggregate(point.network, point.priors);
      jamnet::effective_threshold_bound(point.game, agg, point.budget);
    } catch (const ValidationError& e) {
      throw ValidationError("sweep point " + param + " = " + format_double(value) +
                            " failed validation: " + e.what());
    }

    std::vector<std::string> row{format_double(value)};
    json json_row{{param, value}};
    for (const std::string& kind : kinds) {
      if (kind == "equilibrium_error") {
        const double pe = jamnet::best_response_value(agg, point.priors);
        row.push_back(format_double(pe));
        json_row["equilibrium_error"] = pe;
      } else if (kind == "mixed_utility_max") {
        const GaussianJammerCovariance best = jamnet::max_utility_covariance(agg, point.budget);
        const double u = jamnet::mixed_utility(best, agg, point.priors);
        row.push_back(format_double(u));
        json_row["mixed_utility_max"] = u;
      } else if (kind == "window") {
        const jamnet::Interval window = jamnet::feasibility_window(agg, point.budget);
        row.push_back(format_double(window.low));
        row.push_back(format_double(window.high));
        json_row["window"] = json{{"low", window.low}, {"high", window.high}};
      } else {
        row.push_back(format_double(agg.a));
        row.push_back(format_double(agg.sigma2));
        row.push_back(format_double(agg.c));
        json_row["aggregate"] = json{{"a", agg.a}, {"sigma2", agg.sigma2}, {"c", agg.c}};
      }
    }
    rows.push_back(row);
    json_rows.push_back(json_row);
  }

  std::string csv;
  for (std::size_t i = 0; i < header.size(); ++i) {
    csv += header[i];
    csv += i + 1 < header.size() ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      csv += row[i];
      csv += i + 1 < row.size() ? ',' : '\n';
    }
  }
  emit_report(json_rows, csv, global);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical audit of the fusion-center vs multi-antenna jammer game"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--scenario", global.scenario_path, "Scenario JSON file");
  app.add_option("--output", global.output, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", global.out, "Output path, or - for stdout")->capture_default_str();

  auto* aggregate_cmd =
      app.add_subcommand("aggregate", "Collapsed signal model (a, b, sigma2, c) and window");

  std::optional<std::string> eq_epsilon;
  auto* equilibrium = app.add_subcommand("equilibrium", "Equilibrium-family profile and error");
  equilibrium->add_option("--epsilon", eq_epsilon, "Family parameter, comma separated");

  double lambda0 = 0.0;
  std::optional<std::string> w0;
  std::string order = "network_first";
  int max_half_steps = 64;
  std::string jammer_mode = "stationary";
  auto* dynamics = app.add_subcommand("dynamics", "Best-response play from an initial profile");
  dynamics->add_option("--lambda0", lambda0, "Initial threshold")->required();
  dynamics->add_option("--w0", w0, "Initial jammer vector, comma separated (default zeros)");
  dynamics->add_option("--order", order, "network_first or jammer_first")->capture_default_str();
  dynamics->add_option("--max-half-steps", max_half_steps, "Half-step budget")
      ->capture_default_str();
  dynamics->add_option("--jammer-mode", jammer_mode, "stationary or empirical")
      ->capture_default_str();

  std::optional<std::string> saddle_epsilon;
  std::optional<int> samples;
  std::optional<int> lambda_grid;
  std::uint64_t seed = 1;
  std::vector<std::string> probes;
  auto* saddle = app.add_subcommand("saddle", "Two-sided saddle audit of a family profile");
  saddle->add_option("--epsilon", saddle_epsilon, "Family parameter, comma separated");
  saddle->add_option("--samples", samples, "Jammer-ball sample count (default from scenario)");
  saddle->add_option("--lambda-grid", lambda_grid, "Threshold grid points (default from scenario)");
  saddle->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  saddle->add_option("--probe", probes, "Extra jammer probe, comma separated (repeatable)");

  std::string covariance_path;
  auto* mixed = app.add_subcommand("mixed", "Gaussian mixed jammer vs pure equilibrium");
  mixed->add_option("--covariance", covariance_path, "Covariance JSON file")->required();

  double mc_lambda = 0.0;
  std::optional<std::string> mc_w;
  std::optional<std::string> mc_covariance;
  std::int64_t trials = 100000;
  std::uint64_t mc_seed = 1;
  int workers = 1;
  auto* mc = app.add_subcommand("mc", "Monte Carlo oracle vs the closed form");
  mc->add_option("--lambda", mc_lambda, "Decision threshold")->required();
  mc->add_option("--w", mc_w, "Fixed jammer vector, comma separated");
  mc->add_option("--covariance", mc_covariance, "Gaussian jammer covariance JSON file");
  mc->add_option("--trials", trials, "Trial count")->capture_default_str();
  mc->add_option("--seed", mc_seed, "Stream seed")->capture_default_str();
  mc->add_option("--workers", workers, "Worker threads")->capture_default_str();

  std::string sweep_param;
  std::string sweep_values;
  std::string sweep_outputs;
  auto* sweep = app.add_subcommand("sweep", "One-parameter sweep with report columns");
  sweep->add_option("--param", sweep_param, "Parameter path, e.g. jammer.power")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated sweep values")->required();
  sweep->add_option("--outputs", sweep_outputs,
                    "Report kinds: equilibrium_error, mixed_utility_max, window, aggregate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(aggregate_cmd)) {
      cmd_aggregate(global);
    } else if (app.got_subcommand(equilibrium)) {
      cmd_equilibrium(global, eq_epsilon);
    } else if (app.got_subcommand(dynamics)) {
      cmd_dynamics(global, lambda0, w0, order, max_half_steps, jammer_mode);
    } else if (app.got_subcommand(saddle)) {
      cmd_saddle(global, saddle_epsilon, samples, lambda_grid, seed, probes);
    } else if (app.got_subcommand(mixed)) {
      cmd_mixed(global, covariance_path);
    } else if (app.got_subcommand(mc)) {
      cmd_mc(global, mc_lambda, mc_w, mc_covariance, trials, mc_seed, workers);
    } else if (app.got_subcommand(sweep)) {
      cmd_sweep(global, sweep_param, sweep_values, sweep_outputs);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
