#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "jamnet/errors.hpp"

namespace jamnet {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Raw scenario description: channel gains and noise deviations for a
/// network of N sensors, a jammer with L sensing-side antennas and M
/// FC-side antennas, all feeding one fusion center over a MAC.
struct NetworkParams {
  VectorXd alpha;         ///< PoI-to-sensor gains, length N
  VectorXd phi;           ///< sensor-to-FC forwarding gains, length N
  MatrixXd beta;          ///< jammer-to-sensor gains, N x L
  VectorXd psi;           ///< jammer-to-FC gains, length M
  double sigma_s = 1.0;   ///< sensing-noise standard deviation
  double sigma_fc = 1.0;  ///< FC-noise standard deviation

  Eigen::Index sensors() const { return alpha.size(); }
  Eigen::Index sensing_antennas() const { return beta.cols(); }
  Eigen::Index fc_antennas() const { return psi.size(); }
  Eigen::Index jammer_dims() const { return beta.cols() + psi.size(); }
};

/// Hypothesis priors. Both entries strictly inside (0,1), summing to 1.
struct Priors {
  double pi0 = 0.5;
  double pi1 = 0.5;
};

/// Builds Priors from pi0 alone (pi1 = 1 - pi0) and validates.
Priors make_priors(double pi0);

/// Throws ParameterOutOfRange unless both priors are in (0,1) and sum to 1
/// within 1e-12.
void validate_priors(const Priors& priors);

/// Collapsed signal model at the fusion center: r = a*theta + b^T w + z with
/// z ~ N(0, sigma2), plus the Bayes threshold offset c.
struct ChannelAggregate {
  double a = 0.0;      ///< effective PoI gain
  VectorXd b;          ///< effective jammer gain vector, length L+M
  double sigma2 = 0.0; ///< effective noise variance
  double c = 0.0;      ///< Bayes offset: optimal threshold shift over b^T w

  double sigma() const { return std::sqrt(sigma2); }
  double b_norm2() const { return b.squaredNorm(); }
};

/// Instantaneous jammer power budget P; strategies satisfy ||w||^2 <= P.
struct JammerBudget {
  double power = 0.0;
};

/// Verifier knobs. threshold_bound <= 0 means "derive the default bound".
struct GameConfig {
  double threshold_bound = 0.0;  ///< R, defining Lambda = [-R, R]
  int lambda_grid = 2000;        ///< grid points for threshold scans
  int w_samples = 10000;         ///< jammer-ball samples for saddle audits
  double identity_tol = 1e-12;   ///< tolerance for closed-form identities
};

/// Collapses NetworkParams into (a, b, sigma2, c).
///
/// Throws DimensionMismatch on inconsistent sizes, DegenerateModel when
/// a <= 0, NegativeGain when any derived b entry is negative.
ChannelAggregate aggregate(const NetworkParams& network, const Priors& priors);

/// True iff ||w||^2 <= P + 1e-12. Throws DimensionMismatch when w does not
/// have one entry per jammer antenna.
bool validate_strategy(const Eigen::Ref<const VectorXd>& w, const JammerBudget& budget,
                       Eigen::Index jammer_dims);

/// Default threshold bound |c| + sqrt(P * b^T b) + 6 sigma: contains every
/// best response plus six noise deviations.
double default_threshold_bound(const ChannelAggregate& agg, const JammerBudget& budget);

/// Resolves GameConfig.threshold_bound, substituting the default when unset
/// and rejecting explicit bounds below the default.
double effective_threshold_bound(const GameConfig& config, const ChannelAggregate& agg,
                                 const JammerBudget& budget);

}  // namespace jamnet
