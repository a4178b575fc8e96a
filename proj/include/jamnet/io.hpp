#pragma once

#include <string>

#include <json.hpp>

#include "jamnet/dynamics.hpp"
#include "jamnet/montecarlo.hpp"

namespace jamnet::io {

using nlohmann::json;

/// A fully validated scenario file: network, priors, budget, verifier knobs.
struct Scenario {
  NetworkParams network;
  Priors priors;
  JammerBudget budget;
  GameConfig game;
};

/// Parses a scenario object. Unknown keys are errors; every module-level
/// invariant is re-validated (aggregate() runs on the result).
Scenario scenario_from_json(const json& j);
Scenario load_scenario(const std::string& path);

/// Parses {"dim": n, "data": [n*n numbers, row-major]}.
MatrixXd covariance_from_json(const json& j);
MatrixXd load_covariance(const std::string& path);

json to_json(const ChannelAggregate& agg);
json to_json(const PureStrategyProfile& profile);
json to_json(const StructureReport& report);
json to_json(const SaddleReport& report);
json to_json(const DynamicsTrace& trace, const ChannelAggregate& agg, const Priors& priors);
json to_json(const MonteCarloEstimate& estimate);
json to_json(const MixedComparison& cmp);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

/// Two-column CSV (lambda, pe) for plotting.
std::string to_csv(const StructureReport& report);

/// CSV with columns half_step, player, lambda, w0.., pe.
std::string to_csv(const DynamicsTrace& trace, const ChannelAggregate& agg, const Priors& priors);

std::string to_csv(const MonteCarloEstimate& estimate);

const char* mover_name(Mover mover);
const char* order_name(PlayOrder order);
const char* jammer_mode_name(JammerMode mode);

}  // namespace jamnet::io
