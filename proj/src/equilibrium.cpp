#include "jamnet/equilibrium.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace jamnet {

namespace {

void check_w_dims(const Eigen::Ref<const VectorXd>& w, const ChannelAggregate& agg) {
  if (w.size() != agg.b.size()) {
    std::ostringstream msg;
    msg << "jammer vector has " << w.size() << " entries, aggregate expects " << agg.b.size();
    throw DimensionMismatch(msg.str());
  }
}

double require_jammer_coupling(const ChannelAggregate& agg) {
  const double bb = agg.b_norm2();
  if (!(bb > 0.0)) {
    throw ZeroJammerChannel("b^T b = 0: the jammer cannot influence the fused signal");
  }
  return bb;
}

// Uniform draw from the ball ||w||^2 <= power.
VectorXd sample_in_ball(std::mt19937_64& rng, Eigen::Index dims, double power) {
  VectorXd w = VectorXd::Zero(dims);
  if (dims == 0 || power <= 0.0) {
    return w;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < dims; ++i) {
      w[i] = normal(rng);
    }
    norm = w.norm();
  } while (!(norm > 0.0));
  const double radius =
      std::sqrt(power) * std::pow(unif(rng), 1.0 / static_cast<double>(dims));
  return (radius / norm) * w;
}

}  // namespace

double fc_best_response(const Eigen::Ref<const VectorXd>& w, const ChannelAggregate& agg) {
  check_w_dims(w, agg);
  return agg.b.dot(w) + agg.c;
}

double best_response_value(const ChannelAggregate& agg, const Priors& priors) {
  const double sigma = agg.sigma();
  return priors.pi0 * gaussian_q(agg.c / sigma) + priors.pi1 * gaussian_q((agg.a - agg.c) / sigma);
}

JammerResponse jammer_stationary_response(double threshold, const ChannelAggregate& agg,
                                          const JammerBudget& budget) {
  const double bb = require_jammer_coupling(agg);
  const double target = threshold - agg.c;  // wanted b^T w
  JammerResponse response;
  if (target * target <= budget.power * bb) {
    response.w = (target / bb) * agg.b;
    response.feasible = true;
  } else {
    const double sign = target > 0.0 ? 1.0 : -1.0;
    response.w = sign * std::sqrt(budget.power / bb) * agg.b;
    response.feasible = false;
  }
  return response;
}

Interval feasibility_window(const ChannelAggregate& agg, const JammerBudget& budget) {
  const double bb = require_jammer_coupling(agg);
  const double reach = std::sqrt(budget.power * bb);
  return Interval{agg.c - reach, agg.c + reach};
}

PureStrategyProfile equilibrium_family(const EquilibriumParameter& param,
                                       const ChannelAggregate& agg, const JammerBudget& budget) {
  const double bb = require_jammer_coupling(agg);
  if (param.epsilon.size() != agg.b.size()) {
    std::ostringstream msg;
    msg << "epsilon has " << param.epsilon.size() << " entries, aggregate expects "
        << agg.b.size();
    throw DimensionMismatch(msg.str());
  }
  for (Eigen::Index j = 0; j < param.epsilon.size(); ++j) {
    if (std::abs(param.epsilon[j]) > agg.b[j]) {
      std::ostringstream msg;
      msg << "epsilon[" << j << "] = " << param.epsilon[j] << " outside [-b_j, b_j] with b_j = "
          << agg.b[j];
      throw ParameterOutOfRange(msg.str());
    }
  }
  PureStrategyProfile profile;
  profile.w = std::sqrt(budget.power / bb) * param.epsilon;
  // lambda* = c + sqrt(P / b^T b) b^T epsilon, evaluated through b^T w* so the
  // family identity lambda* = b^T w* + c holds bit for bit.
  profile.threshold = agg.b.dot(profile.w) + agg.c;
  return profile;
}

bool is_in_family(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                  const JammerBudget& budget, double tol) {
  check_w_dims(profile.w, agg);
  if (std::abs(profile.threshold - (agg.b.dot(profile.w) + agg.c)) > tol) {
    return false;
  }
  return profile.w.squaredNorm() <= budget.power + tol;
}

SaddleReport verify_saddle(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                           const Priors& priors, const JammerBudget& budget,
                           const SaddleAuditSpec& spec) {
  if (spec.lambda_grid < 3) {
    throw ParameterOutOfRange("saddle audit needs a lambda grid of at least 3 points");
  }
  if (spec.w_samples < 1) {
    throw ParameterOutOfRange("saddle audit needs at least one jammer sample");
  }
  if (!is_in_family(profile, agg, budget, spec.family_tol)) {
    throw NotInFamily("profile is not in the equilibrium family within the audit tolerance");
  }

  GameConfig bound_config;
  bound_config.threshold_bound = spec.threshold_bound;
  const double bound = effective_threshold_bound(bound_config, agg, budget);

  SaddleReport report;
  report.profile = profile;
  report.tolerance = spec.tolerance;
  report.equilibrium_value = error_probability(profile, agg, priors);

  // FC side: lambda* must already minimize P_E(., w*) over the grid.
  const double y_star = agg.b.dot(profile.w);
  const double step = 2.0 * bound / (spec.lambda_grid - 1);
  bool first = true;
  for (int i = 0; i < spec.lambda_grid; ++i) {
    const double lambda = -bound + step * i;
    const double violation = report.equilibrium_value - error_probability_at(lambda, y_star, agg, priors);
    if (first || violation > report.fc_side_max_violation) {
      report.fc_side_max_violation = violation;
      report.fc_witness_threshold = lambda;
      first = false;
    }
  }

  // Jammer side: uniform ball samples plus deterministic boundary probes.
  const Eigen::Index dims = agg.b.size();
  std::vector<VectorXd> candidates;
  candidates.reserve(static_cast<std::size_t>(spec.w_samples) + 2 * dims + 2 +
                     spec.extra_probes.size());
  std::mt19937_64 rng(spec.seed);
  for (int k = 0; k < spec.w_samples; ++k) {
    candidates.push_back(sample_in_ball(rng, dims, budget.power));
  }
  const double radius = std::sqrt(budget.power);
  for (Eigen::Index j = 0; j < dims; ++j) {
    VectorXd axis = VectorXd::Zero(dims);
    axis[j] = radius;
    candidates.push_back(axis);
    candidates.push_back(-axis);
  }
  const double bb = agg.b_norm2();
  if (bb > 0.0) {
    const VectorXd full_power = std::sqrt(budget.power / bb) * agg.b;
    candidates.push_back(full_power);
    candidates.push_back(-full_power);
  }
  for (const VectorXd& probe : spec.extra_probes) {
    if (!validate_strategy(probe, budget, dims)) {
      std::ostringstream msg;
      msg << "extra probe with ||w||^2 = " << probe.squaredNorm()
          << " exceeds the power budget " << budget.power;
      throw ParameterOutOfRange(msg.str());
    }
    candidates.push_back(probe);
  }

  first = true;
  for (const VectorXd& w : candidates) {
    const double violation =
        error_probability_at(profile.threshold, agg.b.dot(w), agg, priors) -
        report.equilibrium_value;
    if (first || violation > report.jammer_side_max_violation) {
      report.jammer_side_max_violation = violation;
      report.jammer_witness_w = w;
      first = false;
    }
  }
  report.samples = static_cast<std::int64_t>(candidates.size());

  report.holds_fc_side = report.fc_side_max_violation <= spec.tolerance;
  report.holds_jammer_side = report.jammer_side_max_violation <= spec.tolerance;
  return report;
}

}  // namespace jamnet
