#include "jamnet/model.hpp"

#include <cmath>
#include <sstream>

namespace jamnet {

namespace {

constexpr double kPriorSumTol = 1e-12;
constexpr double kPowerSlack = 1e-12;

}  // namespace

Priors make_priors(double pi0) {
  Priors priors{pi0, 1.0 - pi0};
  validate_priors(priors);
  return priors;
}

void validate_priors(const Priors& priors) {
  if (!(priors.pi0 > 0.0 && priors.pi0 < 1.0) || !(priors.pi1 > 0.0 && priors.pi1 < 1.0)) {
    std::ostringstream msg;
    msg << "priors must lie strictly inside (0,1): pi0 = " << priors.pi0
        << ", pi1 = " << priors.pi1;
    throw ParameterOutOfRange(msg.str());
  }
  if (std::abs(priors.pi0 + priors.pi1 - 1.0) > kPriorSumTol) {
    std::ostringstream msg;
    msg << "priors must sum to 1 within 1e-12: pi0 + pi1 = " << priors.pi0 + priors.pi1;
    throw ParameterOutOfRange(msg.str());
  }
}

ChannelAggregate aggregate(const NetworkParams& network, const Priors& priors) {
  const Eigen::Index n = network.alpha.size();
  if (n < 1) {
    throw DimensionMismatch("network must contain at least one sensor (N >= 1)");
  }
  if (network.phi.size() != n) {
    std::ostringstream msg;
    msg << "phi must have one entry per sensor: got " << network.phi.size() << ", expected " << n;
    throw DimensionMismatch(msg.str());
  }
  if (network.beta.rows() != n) {
    std::ostringstream msg;
    msg << "beta must have one row per sensor: got " << network.beta.rows() << ", expected " << n;
    throw DimensionMismatch(msg.str());
  }
  if (!(network.sigma_s > 0.0)) {
    throw ParameterOutOfRange("sigma_s must be strictly positive");
  }
  if (!(network.sigma_fc > 0.0)) {
    throw ParameterOutOfRange("sigma_fc must be strictly positive");
  }
  validate_priors(priors);

  const Eigen::Index sensing = network.beta.cols();
  const Eigen::Index fc = network.psi.size();

  ChannelAggregate agg;
  agg.a = network.phi.dot(network.alpha);
  if (!(agg.a > 0.0)) {
    std::ostringstream msg;
    msg << "effective gain a = sum_i phi_i alpha_i must be positive, got " << agg.a;
    throw DegenerateModel(msg.str());
  }

  agg.b.resize(sensing + fc);
  if (sensing > 0) {
    agg.b.head(sensing) = network.beta.transpose() * network.phi;
  }
  if (fc > 0) {
    agg.b.tail(fc) = network.psi;
  }
  for (Eigen::Index j = 0; j < agg.b.size(); ++j) {
    if (agg.b[j] < 0.0) {
      std::ostringstream msg;
      msg << "derived jammer gain b[" << j << "] = " << agg.b[j] << " is negative";
      throw NegativeGain(msg.str());
    }
  }

  agg.sigma2 = network.sigma_fc * network.sigma_fc +
               network.sigma_s * network.sigma_s * network.phi.squaredNorm();
  agg.c = (agg.a * agg.a + 2.0 * agg.sigma2 * std::log(priors.pi0 / priors.pi1)) / (2.0 * agg.a);
  return agg;
}

bool validate_strategy(const Eigen::Ref<const VectorXd>& w, const JammerBudget& budget,
                       Eigen::Index jammer_dims) {
  if (w.size() != jammer_dims) {
    std::ostringstream msg;
    msg << "jammer vector has " << w.size() << " entries, expected " << jammer_dims;
    throw DimensionMismatch(msg.str());
  }
  return w.squaredNorm() <= budget.power + kPowerSlack;
}

double default_threshold_bound(const ChannelAggregate& agg, const JammerBudget& budget) {
  return std::abs(agg.c) + std::sqrt(budget.power * agg.b_norm2()) + 6.0 * agg.sigma();
}

double effective_threshold_bound(const GameConfig& config, const ChannelAggregate& agg,
                                 const JammerBudget& budget) {
  const double floor = default_threshold_bound(agg, budget);
  if (config.threshold_bound <= 0.0) {
    return floor;
  }
  if (config.threshold_bound < floor) {
    std::ostringstream msg;
    msg << "threshold_bound = " << config.threshold_bound
        << " is below the required |c| + sqrt(P b^T b) + 6 sigma = " << floor;
    throw ParameterOutOfRange(msg.str());
  }
  return config.threshold_bound;
}

}  // namespace jamnet
