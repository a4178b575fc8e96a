#pragma once

#include <cstdint>
#include <vector>

#include "jamnet/analysis.hpp"

namespace jamnet {

/// Vector parameter of the equilibrium family; admissible when
/// -b <= epsilon <= b elementwise.
struct EquilibriumParameter {
  VectorXd epsilon;
};

/// Jammer stationary response: w together with a flag telling whether the
/// stationarity condition b^T w = lambda - c could be met inside the budget.
struct JammerResponse {
  VectorXd w;
  bool feasible = false;
};

/// Closed interval of thresholds for which a power-feasible stationary
/// jammer response exists.
struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Network best response: lambda* = b^T w + c.
double fc_best_response(const Eigen::Ref<const VectorXd>& w, const ChannelAggregate& agg);

/// Error probability attained by the network best response. Independent of
/// the jammer strategy; also the equilibrium error of the family.
double best_response_value(const ChannelAggregate& agg, const Priors& priors);

/// Jammer stationary response to a fixed threshold. Inside the feasibility
/// window returns the minimum-norm solution of b^T w = lambda - c with
/// feasible = true; outside it returns the full-power vector along
/// sign(lambda - c) b with feasible = false. Always ||w||^2 <= P.
/// Throws ZeroJammerChannel when b^T b = 0.
JammerResponse jammer_stationary_response(double threshold, const ChannelAggregate& agg,
                                          const JammerBudget& budget);

/// (c - sqrt(P b^T b), c + sqrt(P b^T b)). Throws ZeroJammerChannel.
Interval feasibility_window(const ChannelAggregate& agg, const JammerBudget& budget);

/// The equilibrium family: w* = sqrt(P / b^T b) epsilon and
/// lambda* = b^T w* + c. Throws ParameterOutOfRange when |epsilon_j| > b_j
/// for some coordinate, ZeroJammerChannel when b^T b = 0.
PureStrategyProfile equilibrium_family(const EquilibriumParameter& param,
                                       const ChannelAggregate& agg, const JammerBudget& budget);

/// True iff lambda = b^T w + c within tol and ||w||^2 <= P + tol.
bool is_in_family(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                  const JammerBudget& budget, double tol);

/// Knobs for the saddle audit. threshold_bound <= 0 derives the default.
struct SaddleAuditSpec {
  double threshold_bound = 0.0;
  int lambda_grid = 2000;             ///< grid points over [-R, R]
  int w_samples = 10000;              ///< uniform samples in the power ball
  std::uint64_t seed = 1;
  double tolerance = 1e-12;           ///< "holds" means violation <= tolerance
  double family_tol = 1e-9;           ///< family membership gate on the input
  std::vector<VectorXd> extra_probes; ///< caller-chosen jammer strategies
};

/// Two-sided audit of the saddle inequalities at a family profile.
/// Violations are reported signed, never clamped.
struct SaddleReport {
  PureStrategyProfile profile;
  double equilibrium_value = 0.0;      ///< P_E(lambda*, w*)
  double fc_side_max_violation = 0.0;  ///< max_lambda P_E(l*,w*) - P_E(l,w*)
  double fc_witness_threshold = 0.0;
  double jammer_side_max_violation = 0.0; ///< max_w P_E(l*,w) - P_E(l*,w*)
  VectorXd jammer_witness_w;
  std::int64_t samples = 0;            ///< jammer strategies evaluated
  double tolerance = 1e-12;
  bool holds_fc_side = false;
  bool holds_jammer_side = false;
};

/// Audits P_E(l*, w) <= P_E(l*, w*) <= P_E(l, w*) over a threshold grid and
/// a deterministic sample of the jammer ball (uniform interior samples plus
/// axis-aligned boundary points, +/- full power along b, and any extra
/// probes). Throws NotInFamily when the profile fails is_in_family at
/// spec.family_tol.
SaddleReport verify_saddle(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                           const Priors& priors, const JammerBudget& budget,
                           const SaddleAuditSpec& spec);

}  // namespace jamnet
