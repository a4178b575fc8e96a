#pragma once

#include <cstdint>

#include "jamnet/mixed.hpp"

namespace jamnet {

/// Plain Monte Carlo error estimate with its binomial standard error.
struct MonteCarloEstimate {
  double estimate = 0.0;
  std::int64_t trials = 0;
  double std_error = 0.0;  ///< sqrt(estimate (1 - estimate) / trials)
  std::uint64_t seed = 0;
};

/// Simulates the full sensing-and-fusion pipeline, not the collapsed closed
/// form: per trial draws theta, per-sensor noise and FC noise, forms
/// s_i = alpha_i theta + sum_l beta_il w_s_l + n_i and
/// r = sum_i phi_i s_i + sum_m psi_m w_fc_m + n_fc, decides H1 iff r > lambda
/// (ties decide H0) and counts errors.
///
/// Trials are partitioned into fixed-size blocks; each block derives its own
/// RNG stream from (seed, block index), so the estimate is bit-identical for
/// any worker count. w splits as (w_s | w_fc). Throws InvalidTrials when
/// trials < 1, DimensionMismatch on a wrong w length.
MonteCarloEstimate simulate_error(const PureStrategyProfile& profile,
                                  const NetworkParams& network, const Priors& priors,
                                  std::int64_t trials, std::uint64_t seed, int workers = 1);

/// As simulate_error, but per trial additionally draws w ~ N(0, W) through a
/// symmetric eigenfactorization of W (negative eigenvalues clamped at zero).
/// Jammer draws consume a separate substream, so W = 0 reproduces
/// simulate_error at w = 0 decision for decision.
MonteCarloEstimate simulate_mixed_error(double threshold, const GaussianJammerCovariance& cov,
                                        const NetworkParams& network, const Priors& priors,
                                        std::int64_t trials, std::uint64_t seed, int workers = 1);

}  // namespace jamnet
