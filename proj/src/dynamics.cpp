#include "jamnet/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace jamnet {

namespace {

constexpr double kMoveTol = 1e-12;

double w_change(const VectorXd& a, const VectorXd& b) {
  if (a.size() == 0) {
    return 0.0;
  }
  return (a - b).lpNorm<Eigen::Infinity>();
}

}  // namespace

DynamicsTrace run_dynamics(const PureStrategyProfile& initial, PlayOrder order,
                           const ChannelAggregate& agg, const Priors& priors,
                           const JammerBudget& budget, int max_half_steps, JammerMode mode) {
  if (max_half_steps < 0) {
    throw ParameterOutOfRange("max_half_steps must be non-negative");
  }
  if (!validate_strategy(initial.w, budget, agg.b.size())) {
    std::ostringstream msg;
    msg << "initial jammer power ||w0||^2 = " << initial.w.squaredNorm()
        << " exceeds the budget P = " << budget.power;
    throw InfeasibleInitial(msg.str());
  }

  DynamicsTrace trace;
  trace.order = order;
  trace.jammer_mode = mode;
  trace.steps.push_back({0, Mover::initial, initial, false});

  PureStrategyProfile current = initial;
  Mover mover = order == PlayOrder::network_first ? Mover::network : Mover::jammer;
  int unchanged_streak = 0;
  int last_change = 0;

  for (int half = 1; half <= max_half_steps && unchanged_streak < 2; ++half) {
    PureStrategyProfile next = current;
    if (mover == Mover::network) {
      next.threshold = fc_best_response(current.w, agg);
    } else if (mode == JammerMode::stationary) {
      // A strategy already satisfying b^T w = lambda - c is a best response;
      // the jammer stays put rather than jump to another point of the set.
      const bool satisfied =
          std::abs(agg.b.dot(current.w) - (current.threshold - agg.c)) <= kMoveTol;
      if (!satisfied) {
        next.w = jammer_stationary_response(current.threshold, agg, budget).w;
      }
    } else {
      next.w = empirical_jammer_response(current.threshold, agg, priors, budget);
    }

    const bool changed = std::abs(next.threshold - current.threshold) > kMoveTol ||
                         w_change(next.w, current.w) > kMoveTol;
    if (changed) {
      unchanged_streak = 0;
      last_change = half;
    } else {
      ++unchanged_streak;
    }
    trace.steps.push_back({half, mover, next, changed});
    current = next;
    mover = mover == Mover::network ? Mover::jammer : Mover::network;
  }

  trace.converged = unchanged_streak >= 2;
  trace.converged_at_half_step = last_change;
  return trace;
}

WindowPosition classify_initial(const PureStrategyProfile& initial, const ChannelAggregate& agg,
                                const JammerBudget& budget) {
  if (agg.b_norm2() > 0.0) {
    const Interval window = feasibility_window(agg, budget);
    return (initial.threshold >= window.low && initial.threshold <= window.high)
               ? WindowPosition::inside_window
               : WindowPosition::outside_window;
  }
  return initial.threshold == agg.c ? WindowPosition::inside_window
                                    : WindowPosition::outside_window;
}

VectorXd empirical_jammer_response(double threshold, const ChannelAggregate& agg,
                                   const Priors& priors, const JammerBudget& budget,
                                   int grid_points) {
  if (grid_points < 3) {
    throw ParameterOutOfRange("empirical jammer response needs at least 3 grid points");
  }
  const double bb = agg.b_norm2();
  if (!(bb > 0.0)) {
    return VectorXd::Zero(agg.b.size());
  }
  // P_E varies with w only through y = b^T w, and |y| <= sqrt(P b^T b) over
  // the ball, so a 1-D scan over y is exhaustive.
  const double reach = std::sqrt(budget.power * bb);
  const double step = 2.0 * reach / (grid_points - 1);
  double best_y = -reach;
  double best_pe = error_probability_at(threshold, best_y, agg, priors);
  for (int i = 1; i < grid_points; ++i) {
    const double y = -reach + step * i;
    const double pe = error_probability_at(threshold, y, agg, priors);
    if (pe > best_pe) {
      best_pe = pe;
      best_y = y;
    }
  }
  return (best_y / bb) * agg.b;
}

}  // namespace jamnet
