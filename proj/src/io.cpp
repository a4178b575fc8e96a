#include "jamnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace jamnet::io {

namespace {

// Strict object schema: every present key must be known, every required key
// present.
void require_keys(const json& j, const char* where, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) {
    throw ValidationError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : required) {
      known = known || item.key() == key;
    }
    for (const char* key : optional) {
      known = known || item.key() == key;
    }
    if (!known) {
      throw ValidationError("unknown key '" + item.key() + "' in " + where);
    }
  }
  for (const char* key : required) {
    if (!j.contains(key)) {
      throw ValidationError(std::string("missing key '") + key + "' in " + where);
    }
  }
}

double number_at(const json& j, const char* where) {
  if (!j.is_number()) {
    throw ValidationError(std::string(where) + " must be a number");
  }
  return j.get<double>();
}

VectorXd vector_at(const json& j, const char* where) {
  if (!j.is_array()) {
    throw ValidationError(std::string(where) + " must be an array of numbers");
  }
  VectorXd v(j.size());
  Eigen::Index i = 0;
  for (const auto& entry : j) {
    if (!entry.is_number()) {
      throw ValidationError(std::string(where) + " must contain only numbers");
    }
    v[i++] = entry.get<double>();
  }
  return v;
}

MatrixXd matrix_at(const json& j, const char* where, Eigen::Index rows) {
  if (!j.is_array()) {
    throw ValidationError(std::string(where) + " must be an array of rows");
  }
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    std::ostringstream msg;
    msg << where << " must have " << rows << " rows, got " << j.size();
    throw DimensionMismatch(msg.str());
  }
  Eigen::Index cols = -1;
  MatrixXd m;
  Eigen::Index r = 0;
  for (const auto& row : j) {
    if (!row.is_array()) {
      throw ValidationError(std::string(where) + " rows must be arrays of numbers");
    }
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      std::ostringstream msg;
      msg << where << " is ragged: row " << r << " has " << row.size() << " entries, expected "
          << cols;
      throw DimensionMismatch(msg.str());
    }
    Eigen::Index col = 0;
    for (const auto& entry : row) {
      if (!entry.is_number()) {
        throw ValidationError(std::string(where) + " must contain only numbers");
      }
      m(r, col++) = entry.get<double>();
    }
    ++r;
  }
  if (cols < 0) {
    m.resize(rows, 0);
  }
  return m;
}

json vector_to_json(const Eigen::Ref<const VectorXd>& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(v[i]);
  }
  return arr;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  require_keys(j, "scenario", {"network", "priors", "jammer"}, {"game"});

  Scenario scenario;
  const json& net = j.at("network");
  require_keys(net, "network", {"alpha", "phi", "sigma_s", "sigma_fc"}, {"beta", "psi"});
  scenario.network.alpha = vector_at(net.at("alpha"), "network.alpha");
  scenario.network.phi = vector_at(net.at("phi"), "network.phi");
  scenario.network.sigma_s = number_at(net.at("sigma_s"), "network.sigma_s");
  scenario.network.sigma_fc = number_at(net.at("sigma_fc"), "network.sigma_fc");
  const Eigen::Index sensors = scenario.network.alpha.size();
  scenario.network.beta = net.contains("beta") ? matrix_at(net.at("beta"), "network.beta", sensors)
                                               : MatrixXd(sensors, 0);
  scenario.network.psi =
      net.contains("psi") ? vector_at(net.at("psi"), "network.psi") : VectorXd(0);

  const json& priors = j.at("priors");
  require_keys(priors, "priors", {"pi0"});
  scenario.priors = make_priors(number_at(priors.at("pi0"), "priors.pi0"));

  const json& jammer = j.at("jammer");
  require_keys(jammer, "jammer", {"power"});
  scenario.budget.power = number_at(jammer.at("power"), "jammer.power");
  if (scenario.budget.power < 0.0) {
    throw ParameterOutOfRange("jammer.power must be non-negative");
  }

  if (j.contains("game")) {
    const json& game = j.at("game");
    require_keys(game, "game", {}, {"threshold_bound", "lambda_grid", "w_samples", "tolerances"});
    if (game.contains("threshold_bound")) {
      scenario.game.threshold_bound = number_at(game.at("threshold_bound"), "game.threshold_bound");
    }
    if (game.contains("lambda_grid")) {
      scenario.game.lambda_grid = static_cast<int>(number_at(game.at("lambda_grid"), "game.lambda_grid"));
    }
    if (game.contains("w_samples")) {
      scenario.game.w_samples = static_cast<int>(number_at(game.at("w_samples"), "game.w_samples"));
    }
    if (game.contains("tolerances")) {
      const json& tol = game.at("tolerances");
      require_keys(tol, "game.tolerances", {}, {"identity"});
      if (tol.contains("identity")) {
        scenario.game.identity_tol = number_at(tol.at("identity"), "game.tolerances.identity");
      }
    }
  }

  // Re-validate every module-level invariant on load.
  const ChannelAggregate agg = aggregate(scenario.network, scenario.priors);
  effective_threshold_bound(scenario.game, agg, scenario.budget);
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open scenario file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("scenario file " + path + " is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

MatrixXd covariance_from_json(const json& j) {
  require_keys(j, "covariance", {"dim", "data"});
  const json& dim_json = j.at("dim");
  if (!dim_json.is_number_integer() || dim_json.get<long long>() < 0) {
    throw ValidationError("covariance.dim must be a non-negative integer");
  }
  const Eigen::Index dim = dim_json.get<Eigen::Index>();
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != dim * dim) {
    std::ostringstream msg;
    msg << "covariance.data must hold dim*dim = " << dim * dim << " numbers (row-major)";
    throw DimensionMismatch(msg.str());
  }
  MatrixXd w(dim, dim);
  Eigen::Index k = 0;
  for (const auto& entry : data) {
    if (!entry.is_number()) {
      throw ValidationError("covariance.data must contain only numbers");
    }
    w(k / dim, k % dim) = entry.get<double>();
    ++k;
  }
  return w;
}

MatrixXd load_covariance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open covariance file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("covariance file " + path + " is not valid JSON: " + e.what());
  }
  return covariance_from_json(j);
}

json to_json(const ChannelAggregate& agg) {
  return json{{"a", agg.a}, {"b", vector_to_json(agg.b)}, {"sigma2", agg.sigma2}, {"c", agg.c}};
}

json to_json(const PureStrategyProfile& profile) {
  return json{{"lambda", profile.threshold}, {"w", vector_to_json(profile.w)}};
}

json to_json(const StructureReport& report) {
  return json{{"grid", report.grid},
              {"values", report.values},
              {"unimodal", report.unimodal},
              {"argmin", report.argmin},
              {"max_violation", report.max_violation}};
}

json to_json(const SaddleReport& report) {
  return json{{"profile", to_json(report.profile)},
              {"equilibrium_value", report.equilibrium_value},
              {"fc_side_max_violation", report.fc_side_max_violation},
              {"fc_witness_lambda", report.fc_witness_threshold},
              {"jammer_side_max_violation", report.jammer_side_max_violation},
              {"jammer_witness_w", vector_to_json(report.jammer_witness_w)},
              {"samples", report.samples},
              {"tolerance", report.tolerance},
              {"holds_fc_side", report.holds_fc_side},
              {"holds_jammer_side", report.holds_jammer_side}};
}

json to_json(const DynamicsTrace& trace, const ChannelAggregate& agg, const Priors& priors) {
  json steps = json::array();
  for (const DynamicsStep& step : trace.steps) {
    steps.push_back(json{{"half_step", step.half_step},
                         {"player", mover_name(step.mover)},
                         {"lambda", step.profile.threshold},
                         {"w", vector_to_json(step.profile.w)},
                         {"pe", error_probability(step.profile, agg, priors)},
                         {"changed", step.changed}});
  }
  return json{{"order", order_name(trace.order)},
              {"jammer_mode", jammer_mode_name(trace.jammer_mode)},
              {"converged", trace.converged},
              {"converged_at_half_step", trace.converged_at_half_step},
              {"steps", steps}};
}

json to_json(const MonteCarloEstimate& estimate) {
  return json{{"estimate", estimate.estimate},
              {"trials", estimate.trials},
              {"stderr", estimate.std_error},
              {"seed", estimate.seed}};
}

json to_json(const MixedComparison& cmp) {
  return json{{"mixed_utility", cmp.mixed_utility},
              {"pure_value", cmp.pure_value},
              {"advantage", cmp.advantage}};
}

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string to_csv(const StructureReport& report) {
  std::string out = "lambda,pe\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    out += format_double(report.grid[i]);
    out += ',';
    out += format_double(report.values[i]);
    out += '\n';
  }
  return out;
}

std::string to_csv(const DynamicsTrace& trace, const ChannelAggregate& agg, const Priors& priors) {
  std::string out = "half_step,player";
  const Eigen::Index dims = trace.steps.empty() ? 0 : trace.steps.front().profile.w.size();
  out += ",lambda";
  for (Eigen::Index j = 0; j < dims; ++j) {
    out += ",w" + std::to_string(j);
  }
  out += ",pe\n";
  for (const DynamicsStep& step : trace.steps) {
    out += std::to_string(step.half_step);
    out += ',';
    out += mover_name(step.mover);
    out += ',';
    out += format_double(step.profile.threshold);
    for (Eigen::Index j = 0; j < dims; ++j) {
      out += ',';
      out += format_double(step.profile.w[j]);
    }
    out += ',';
    out += format_double(error_probability(step.profile, agg, priors));
    out += '\n';
  }
  return out;
}

std::string to_csv(const MonteCarloEstimate& estimate) {
  std::string out = "estimate,trials,stderr,seed\n";
  out += format_double(estimate.estimate);
  out += ',' + std::to_string(estimate.trials);
  out += ',' + format_double(estimate.std_error);
  out += ',' + std::to_string(estimate.seed);
  out += '\n';
  return out;
}

const char* mover_name(Mover mover) {
  switch (mover) {
    case Mover::initial:
      return "initial";
    case Mover::network:
      return "network";
    case Mover::jammer:
      return "jammer";
  }
  return "?";
}

const char* order_name(PlayOrder order) {
  return order == PlayOrder::network_first ? "network_first" : "jammer_first";
}

const char* jammer_mode_name(JammerMode mode) {
  return mode == JammerMode::stationary ? "stationary" : "empirical";
}

}  // namespace jamnet::io
