#include "jamnet/mixed.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace jamnet {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kEigenFloor = -1e-10;
constexpr double kTraceSlack = 1e-12;

}  // namespace

void validate_covariance(const GaussianJammerCovariance& cov) {
  if (cov.W.rows() != cov.W.cols()) {
    std::ostringstream msg;
    msg << "covariance must be square, got " << cov.W.rows() << "x" << cov.W.cols();
    throw InvalidCovariance(msg.str());
  }
  if (cov.budget < 0.0) {
    throw InvalidCovariance("power budget must be non-negative");
  }
  if (cov.W.size() == 0) {
    return;
  }
  const double asym = (cov.W - cov.W.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    std::ostringstream msg;
    msg << "covariance is not symmetric: max |W - W^T| = " << asym;
    throw InvalidCovariance(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(cov.W, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < kEigenFloor) {
    std::ostringstream msg;
    msg << "covariance is not PSD: smallest eigenvalue = " << min_eig;
    throw InvalidCovariance(msg.str());
  }
  const double trace = cov.W.trace();
  if (trace > cov.budget + kTraceSlack) {
    std::ostringstream msg;
    msg << "tr(W) = " << trace << " exceeds the average power budget " << cov.budget;
    throw InvalidCovariance(msg.str());
  }
}

double fused_jamming_variance(const GaussianJammerCovariance& cov, const ChannelAggregate& agg) {
  validate_covariance(cov);
  if (cov.W.rows() != agg.b.size()) {
    std::ostringstream msg;
    msg << "covariance is " << cov.W.rows() << "x" << cov.W.cols() << ", aggregate expects "
        << agg.b.size() << " jammer dimensions";
    throw InvalidCovariance(msg.str());
  }
  if (agg.b.size() == 0) {
    return 0.0;
  }
  return std::max(0.0, agg.b.dot(cov.W * agg.b));
}

double gamma_functional(double x, const GaussianJammerCovariance& cov,
                        const ChannelAggregate& agg, const Priors& priors) {
  const double s = std::sqrt(agg.sigma2 + fused_jamming_variance(cov, agg));
  const double pe = priors.pi0 * gaussian_q(x / s) + priors.pi1 * gaussian_q((agg.a - x) / s);
  return std::clamp(pe, 0.0, 1.0);
}

double mixed_best_threshold(const GaussianJammerCovariance& cov, const ChannelAggregate& agg,
                            const Priors& priors) {
  const double v = fused_jamming_variance(cov, agg);
  return agg.c + (v / agg.a) * std::log(priors.pi0 / priors.pi1);
}

double mixed_utility(const GaussianJammerCovariance& cov, const ChannelAggregate& agg,
                     const Priors& priors) {
  return gamma_functional(mixed_best_threshold(cov, agg, priors), cov, agg, priors);
}

MixedComparison compare_mixed_vs_pure(const GaussianJammerCovariance& cov,
                                      const ChannelAggregate& agg, const Priors& priors) {
  MixedComparison cmp;
  cmp.mixed_utility = mixed_utility(cov, agg, priors);
  cmp.pure_value = best_response_value(agg, priors);
  cmp.advantage = cmp.mixed_utility - cmp.pure_value;
  return cmp;
}

GaussianJammerCovariance max_utility_covariance(const ChannelAggregate& agg,
                                                const JammerBudget& budget) {
  GaussianJammerCovariance cov;
  cov.budget = budget.power;
  const double bb = agg.b_norm2();
  if (bb > 0.0) {
    cov.W = (budget.power / bb) * (agg.b * agg.b.transpose());
  } else {
    cov.W = MatrixXd::Zero(agg.b.size(), agg.b.size());
  }
  return cov;
}

}  // namespace jamnet
