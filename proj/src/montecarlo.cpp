#include "jamnet/montecarlo.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace jamnet {

namespace {

// Trials per block. Blocks are the unit of RNG derivation and scheduling:
// block b always simulates the same trials with the same stream, so worker
// count cannot change the estimate.
constexpr std::int64_t kBlockTrials = 8192;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation from (seed, block, stream). Stream 0 feeds
// the channel draws, stream 1 the jammer draws.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block, std::uint64_t stream) {
  return splitmix64(splitmix64(splitmix64(seed) ^ block) ^ (stream + 0x517CC1B727220A95ULL));
}

void check_network(const NetworkParams& network, const Priors& priors) {
  const Eigen::Index n = network.alpha.size();
  if (n < 1 || network.phi.size() != n || network.beta.rows() != n) {
    throw DimensionMismatch("network gain arrays disagree on the sensor count");
  }
  if (!(network.sigma_s > 0.0) || !(network.sigma_fc > 0.0)) {
    throw ParameterOutOfRange("noise deviations must be strictly positive");
  }
  validate_priors(priors);
}

// One block of the full sensing-and-fusion pipeline with a fixed jammer
// signal, pre-reduced to its per-sensor and FC-side contributions.
std::int64_t simulate_block(std::int64_t count, const NetworkParams& network,
                            const Priors& priors, double lambda, const VectorXd& jam_sensing,
                            double jam_fc, std::mt19937_64& rng) {
  std::bernoulli_distribution draw_h1(priors.pi1);
  std::normal_distribution<double> unit(0.0, 1.0);
  const Eigen::Index n = network.sensors();
  std::int64_t errors = 0;
  for (std::int64_t t = 0; t < count; ++t) {
    const bool theta = draw_h1(rng);
    double fused = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s_i =
          (theta ? network.alpha[i] : 0.0) + jam_sensing[i] + network.sigma_s * unit(rng);
      fused += network.phi[i] * s_i;
    }
    fused += jam_fc + network.sigma_fc * unit(rng);
    const bool decide_h1 = fused > lambda;  // ties decide H0
    errors += decide_h1 != theta;
  }
  return errors;
}

std::int64_t simulate_block_mixed(std::int64_t count, const NetworkParams& network,
                                  const Priors& priors, double lambda, const MatrixXd& factor,
                                  std::mt19937_64& rng_channel, std::mt19937_64& rng_jammer) {
  std::bernoulli_distribution draw_h1(priors.pi1);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> unit_jam(0.0, 1.0);
  const Eigen::Index n = network.sensors();
  const Eigen::Index sensing = network.sensing_antennas();
  const Eigen::Index fc = network.fc_antennas();
  const Eigen::Index dims = sensing + fc;
  VectorXd gauss(dims);
  std::int64_t errors = 0;
  for (std::int64_t t = 0; t < count; ++t) {
    for (Eigen::Index j = 0; j < dims; ++j) {
      gauss[j] = unit_jam(rng_jammer);
    }
    const VectorXd w = factor * gauss;
    const VectorXd jam_sensing = sensing > 0 ? VectorXd(network.beta * w.head(sensing))
                                             : VectorXd::Zero(n);
    const double jam_fc = fc > 0 ? network.psi.dot(w.tail(fc)) : 0.0;

    const bool theta = draw_h1(rng_channel);
    double fused = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s_i =
          (theta ? network.alpha[i] : 0.0) + jam_sensing[i] + network.sigma_s * unit(rng_channel);
      fused += network.phi[i] * s_i;
    }
    fused += jam_fc + network.sigma_fc * unit(rng_channel);
    const bool decide_h1 = fused > lambda;
    errors += decide_h1 != theta;
  }
  return errors;
}

template <typename BlockFn>
MonteCarloEstimate run_blocks(std::int64_t trials, std::uint64_t seed, int workers,
                              BlockFn&& block_fn) {
  if (trials < 1) {
    throw InvalidTrials("trials must be >= 1");
  }
  if (workers < 1) {
    throw ParameterOutOfRange("workers must be >= 1");
  }

  const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<std::int64_t> errors(static_cast<std::size_t>(blocks), 0);

  auto run_range = [&](int worker) {
    for (std::int64_t blk = worker; blk < blocks; blk += workers) {
      const std::int64_t offset = blk * kBlockTrials;
      const std::int64_t count = std::min(kBlockTrials, trials - offset);
      errors[static_cast<std::size_t>(blk)] = block_fn(blk, count);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int worker = 1; worker < workers; ++worker) {
    pool.emplace_back(run_range, worker);
  }
  run_range(0);
  for (std::thread& thread : pool) {
    thread.join();
  }

  std::int64_t total = 0;
  for (std::int64_t block_errors : errors) {
    total += block_errors;
  }

  MonteCarloEstimate estimate;
  estimate.trials = trials;
  estimate.seed = seed;
  estimate.estimate = static_cast<double>(total) / static_cast<double>(trials);
  estimate.std_error =
      std::sqrt(estimate.estimate * (1.0 - estimate.estimate) / static_cast<double>(trials));
  return estimate;
}

}  // namespace

MonteCarloEstimate simulate_error(const PureStrategyProfile& profile,
                                  const NetworkParams& network, const Priors& priors,
                                  std::int64_t trials, std::uint64_t seed, int workers) {
  check_network(network, priors);
  if (profile.w.size() != network.jammer_dims()) {
    std::ostringstream msg;
    msg << "jammer vector has " << profile.w.size() << " entries, network expects "
        << network.jammer_dims();
    throw DimensionMismatch(msg.str());
  }
  const Eigen::Index sensing = network.sensing_antennas();
  const Eigen::Index fc = network.fc_antennas();
  const VectorXd jam_sensing = sensing > 0 ? VectorXd(network.beta * profile.w.head(sensing))
                                           : VectorXd::Zero(network.sensors());
  const double jam_fc = fc > 0 ? network.psi.dot(profile.w.tail(fc)) : 0.0;

  return run_blocks(trials, seed, workers, [&](std::int64_t blk, std::int64_t count) {
    std::mt19937_64 rng(block_seed(seed, static_cast<std::uint64_t>(blk), 0));
    return simulate_block(count, network, priors, profile.threshold, jam_sensing, jam_fc, rng);
  });
}

MonteCarloEstimate simulate_mixed_error(double threshold, const GaussianJammerCovariance& cov,
                                        const NetworkParams& network, const Priors& priors,
                                        std::int64_t trials, std::uint64_t seed, int workers) {
  check_network(network, priors);
  validate_covariance(cov);
  if (cov.W.rows() != network.jammer_dims()) {
    std::ostringstream msg;
    msg << "covariance is " << cov.W.rows() << "x" << cov.W.cols() << ", network expects "
        << network.jammer_dims() << " jammer dimensions";
    throw InvalidCovariance(msg.str());
  }

  // Symmetric factor W = F F^T; eigenvalues inside the validation floor are
  // clamped to zero.
  MatrixXd factor = MatrixXd::Zero(cov.W.rows(), cov.W.cols());
  if (cov.W.size() > 0) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(cov.W);
    const VectorXd scale = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    factor = solver.eigenvectors() * scale.asDiagonal();
  }

  return run_blocks(trials, seed, workers, [&](std::int64_t blk, std::int64_t count) {
    std::mt19937_64 rng_channel(block_seed(seed, static_cast<std::uint64_t>(blk), 0));
    std::mt19937_64 rng_jammer(block_seed(seed, static_cast<std::uint64_t>(blk), 1));
    return simulate_block_mixed(count, network, priors, threshold, factor, rng_channel,
                                rng_jammer);
  });
}

}  // namespace jamnet
