#pragma once

#include <vector>

#include "jamnet/model.hpp"

namespace jamnet {

/// One game state: FC threshold lambda paired with a jammer vector w.
struct PureStrategyProfile {
  double threshold = 0.0;
  VectorXd w;
};

/// Standard normal upper-tail probability Q(x) = P(Z > x).
double gaussian_q(double x);

/// FC error probability as a function of the received-mean shift y = b^T w:
/// pi0 Q((lambda - y)/sigma) + pi1 [1 - Q((lambda - y - a)/sigma)].
double error_probability_at(double threshold, double y, const ChannelAggregate& agg,
                            const Priors& priors);

/// FC error probability for a full profile. Throws DimensionMismatch when
/// the jammer vector length disagrees with the aggregate.
double error_probability(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                         const Priors& priors);

/// Analytic d P_E / d lambda at the profile.
double threshold_derivative(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                            const Priors& priors);

/// The score g(y) driving the jammer-side analysis; d P_E / d y = -g(y).
/// Positive left of the zero crossing, negative right of it.
double score_g(double y, double threshold, const ChannelAggregate& agg, const Priors& priors);

/// Unique zero crossing of g at the given threshold: y0 = lambda - c.
double zero_crossing(double threshold, const ChannelAggregate& agg, const Priors& priors);

/// Symmetric threshold grid over [-bound, bound].
struct ThresholdGrid {
  double bound = 0.0;
  int points = 2000;
};

/// Sampled shape of P_E(lambda) at fixed w.
struct StructureReport {
  std::vector<double> grid;
  std::vector<double> values;
  bool unimodal = false;
  double argmin = 0.0;        ///< grid point attaining the sampled minimum
  double max_violation = 0.0; ///< worst single-valley comparison breach
};

/// Samples P_E(lambda, w) on the grid and tests the single-valley shape:
/// values must decrease to the argmin and increase after it, with plateaus
/// tolerated within 1e-12.
StructureReport check_unimodal_in_threshold(const Eigen::Ref<const VectorXd>& w,
                                            const ChannelAggregate& agg, const Priors& priors,
                                            const ThresholdGrid& grid);

}  // namespace jamnet
