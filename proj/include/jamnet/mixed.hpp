#pragma once

#include "jamnet/equilibrium.hpp"

namespace jamnet {

/// Gaussian mixed jammer strategy w ~ N(0, W) under the average power
/// constraint tr(W) <= budget.
struct GaussianJammerCovariance {
  MatrixXd W;
  double budget = 0.0;
};

/// Throws InvalidCovariance unless W is square, symmetric within 1e-12,
/// PSD (smallest eigenvalue >= -1e-10) and tr(W) <= budget + 1e-12.
void validate_covariance(const GaussianJammerCovariance& cov);

/// Variance the mixed jammer adds to the fused signal: b^T W b (floored at
/// zero against round-off). Throws InvalidCovariance on a bad covariance or
/// a dimension mismatch with the aggregate.
double fused_jamming_variance(const GaussianJammerCovariance& cov, const ChannelAggregate& agg);

/// Expected error probability at threshold x under the mixed jammer:
/// pi0 Q(x/s) + pi1 [1 - Q((x-a)/s)] with s^2 = sigma^2 + b^T W b.
double gamma_functional(double x, const GaussianJammerCovariance& cov,
                        const ChannelAggregate& agg, const Priors& priors);

/// Threshold minimizing the mixed-jammer error:
/// c + (b^T W b / a) log(pi0/pi1).
double mixed_best_threshold(const GaussianJammerCovariance& cov, const ChannelAggregate& agg,
                            const Priors& priors);

/// Expected utility U(W): gamma_functional at the mixed best threshold.
double mixed_utility(const GaussianJammerCovariance& cov, const ChannelAggregate& agg,
                     const Priors& priors);

struct MixedComparison {
  double mixed_utility = 0.0;
  double pure_value = 0.0;
  double advantage = 0.0;  ///< mixed_utility - pure_value, >= 0 up to round-off
};

/// U(W) against the pure-equilibrium error. advantage is zero exactly when
/// b^T W b = 0 and strictly positive otherwise.
MixedComparison compare_mixed_vs_pure(const GaussianJammerCovariance& cov,
                                      const ChannelAggregate& agg, const Priors& priors);

/// Covariance maximizing b^T W b subject to tr(W) <= P: the rank-one matrix
/// P bhat bhat^T along bhat = b/||b||. Returns the zero matrix when b = 0.
/// U is increasing in b^T W b, so this maximizes the jammer's utility.
GaussianJammerCovariance max_utility_covariance(const ChannelAggregate& agg,
                                                const JammerBudget& budget);

}  // namespace jamnet
