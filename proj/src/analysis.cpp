#include "jamnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace jamnet {

namespace {

constexpr double kValleyTol = 1e-12;

// Exponent clamp for the f2/f4 brackets. Saturates the bracket magnitude
// without moving its sign or zero crossing.
double clamped_exp(double e) { return std::exp(std::clamp(e, -700.0, 700.0)); }

// Gaussian kernel (1 / (sigma sqrt(2 pi))) exp(-d^2 / (2 sigma^2)).
double gaussian_kernel(double d, double sigma, double sigma2) {
  return std::exp(-d * d / (2.0 * sigma2)) / (sigma * std::numbers::sqrt2 * std::sqrt(std::numbers::pi));
}

// The shared bracket pi1 exp((2 a d - a^2) / (2 sigma^2)) - pi0 appearing in
// both the threshold derivative and the score g, with d = lambda - y.
double likelihood_bracket(double d, const ChannelAggregate& agg, const Priors& priors) {
  const double e = (2.0 * agg.a * d - agg.a * agg.a) / (2.0 * agg.sigma2);
  return priors.pi1 * clamped_exp(e) - priors.pi0;
}

void check_profile_dims(const PureStrategyProfile& profile, const ChannelAggregate& agg) {
  if (profile.w.size() != agg.b.size()) {
    std::ostringstream msg;
    msg << "profile jammer vector has " << profile.w.size() << " entries, aggregate expects "
        << agg.b.size();
    throw DimensionMismatch(msg.str());
  }
}

}  // namespace

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double error_probability_at(double threshold, double y, const ChannelAggregate& agg,
                            const Priors& priors) {
  const double sigma = agg.sigma();
  const double u = threshold - y;
  // 1 - Q(z) = Q(-z) keeps both terms fully accurate in either tail.
  const double pe = priors.pi0 * gaussian_q(u / sigma) + priors.pi1 * gaussian_q((agg.a - u) / sigma);
  return std::clamp(pe, 0.0, 1.0);
}

double error_probability(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                         const Priors& priors) {
  check_profile_dims(profile, agg);
  return error_probability_at(profile.threshold, agg.b.dot(profile.w), agg, priors);
}

double threshold_derivative(const PureStrategyProfile& profile, const ChannelAggregate& agg,
                            const Priors& priors) {
  check_profile_dims(profile, agg);
  const double d = profile.threshold - agg.b.dot(profile.w);
  return gaussian_kernel(d, agg.sigma(), agg.sigma2) * likelihood_bracket(d, agg, priors);
}

double score_g(double y, double threshold, const ChannelAggregate& agg, const Priors& priors) {
  const double d = threshold - y;
  return gaussian_kernel(d, agg.sigma(), agg.sigma2) * likelihood_bracket(d, agg, priors);
}

double zero_crossing(double threshold, const ChannelAggregate& agg, const Priors& priors) {
  (void)priors;  // the prior dependence is already folded into c
  return threshold - agg.c;
}

StructureReport check_unimodal_in_threshold(const Eigen::Ref<const VectorXd>& w,
                                            const ChannelAggregate& agg, const Priors& priors,
                                            const ThresholdGrid& grid) {
  if (grid.points < 3) {
    throw ParameterOutOfRange("threshold grid needs at least 3 points");
  }
  if (!(grid.bound > 0.0)) {
    throw ParameterOutOfRange("threshold grid bound must be positive");
  }
  if (w.size() != agg.b.size()) {
    throw DimensionMismatch("jammer vector length disagrees with aggregate");
  }

  const double y = agg.b.dot(w);
  const double step = 2.0 * grid.bound / (grid.points - 1);

  StructureReport report;
  report.grid.resize(grid.points);
  report.values.resize(grid.points);
  std::size_t argmin_idx = 0;
  for (int i = 0; i < grid.points; ++i) {
    const double lambda = -grid.bound + step * i;
    report.grid[i] = lambda;
    report.values[i] = error_probability_at(lambda, y, agg, priors);
    if (report.values[i] < report.values[argmin_idx]) {
      argmin_idx = static_cast<std::size_t>(i);
    }
  }
  report.argmin = report.grid[argmin_idx];

  // Single valley: non-increasing up to the argmin, non-decreasing after,
  // plateaus tolerated within kValleyTol.
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < report.values.size(); ++i) {
    const double delta = report.values[i + 1] - report.values[i];
    const double violation = (i < argmin_idx) ? delta : -delta;
    worst = std::max(worst, violation);
  }
  report.max_violation = worst;
  report.unimodal = worst <= kValleyTol;
  return report;
}

}  // namespace jamnet
