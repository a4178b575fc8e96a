#pragma once

#include "jamnet/equilibrium.hpp"

namespace jamnet {

enum class PlayOrder { network_first, jammer_first };

/// Jammer update rule used by the repeated game. `stationary` plays the
/// closed-form stationary response; `empirical` plays a grid-search
/// maximizer of P_E and is excluded from the convergence guarantees.
enum class JammerMode { stationary, empirical };

enum class Mover { initial, network, jammer };

enum class WindowPosition { inside_window, outside_window };

struct DynamicsStep {
  int half_step = 0;
  Mover mover = Mover::initial;
  PureStrategyProfile profile;
  bool changed = false;
};

struct DynamicsTrace {
  PlayOrder order = PlayOrder::network_first;
  JammerMode jammer_mode = JammerMode::stationary;
  std::vector<DynamicsStep> steps;  ///< steps[0] holds the initial profile
  bool converged = false;
  int converged_at_half_step = 0;   ///< last half-step that changed the profile
};

/// Alternating best-response play from an initial profile. The network moves
/// to b^T w + c; the jammer keeps its strategy when it already satisfies the
/// stationarity condition and otherwise plays the deterministic stationary
/// response (minimum-norm inside the window, saturated along b outside).
/// Stops once two consecutive half-steps leave the profile unchanged within
/// 1e-12, or at max_half_steps. Throws InfeasibleInitial when ||w0||^2 > P.
DynamicsTrace run_dynamics(const PureStrategyProfile& initial, PlayOrder order,
                           const ChannelAggregate& agg, const Priors& priors,
                           const JammerBudget& budget, int max_half_steps = 64,
                           JammerMode mode = JammerMode::stationary);

/// Window membership of the initial threshold per feasibility_window.
WindowPosition classify_initial(const PureStrategyProfile& initial, const ChannelAggregate& agg,
                                const JammerBudget& budget);

/// Grid-search maximizer of P_E(lambda, w) over the power ball. P_E depends
/// on w only through y = b^T w, so the search runs over y in
/// [-sqrt(P b^T b), sqrt(P b^T b)] and maps back along b.
VectorXd empirical_jammer_response(double threshold, const ChannelAggregate& agg,
                                   const Priors& priors, const JammerBudget& budget,
                                   int grid_points = 2001);

}  // namespace jamnet
