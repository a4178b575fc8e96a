#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jamnet/mixed.hpp"
#include "support/oracle.hpp"
#include "support/scenarios.hpp"

using namespace jamnet;

namespace {

// Frozen oracle values.
constexpr double kGamma1HalfIso = 0.39974768093484592;   // Gamma(1), W = 2.5 I, S1
constexpr double kAdvantageHalfIso = 0.11789625010945942;
constexpr double kUtilityDiag50 = 0.41741366459261958;   // U(diag(5,0)), S1
constexpr double kMixedLambdaSkewed = 9.5142452371778496; // c + (12.5/2) ln 3 at pi0 = 0.75

struct S1 {
  ChannelAggregate agg;
  Priors priors;
  JammerBudget budget;
  S1() {
    const auto s = testsup::make_s1();
    agg = aggregate(s.network, s.priors);
    priors = s.priors;
    budget = s.budget;
  }
};

GaussianJammerCovariance cov_of(const MatrixXd& w, double budget) {
  return GaussianJammerCovariance{w, budget};
}

}  // namespace

TEST_CASE("covariance validation") {
  const S1 s1;
  CHECK_NOTHROW(validate_covariance(cov_of(2.5 * MatrixXd::Identity(2, 2), 5.0)));
  CHECK_NOTHROW(validate_covariance(cov_of(MatrixXd::Zero(2, 2), 0.0)));

  MatrixXd asym(2, 2);
  asym << 1.0, 0.5, 0.2, 1.0;
  CHECK_THROWS_AS(validate_covariance(cov_of(asym, 5.0)), InvalidCovariance);

  MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(validate_covariance(cov_of(indefinite, 5.0)), InvalidCovariance);

  CHECK_THROWS_AS(validate_covariance(cov_of(3.0 * MatrixXd::Identity(2, 2), 5.0)),
                  InvalidCovariance);  // trace 6 > 5
  CHECK_THROWS_AS(validate_covariance(cov_of(MatrixXd::Zero(2, 3), 5.0)), InvalidCovariance);
  CHECK_THROWS_AS(fused_jamming_variance(cov_of(MatrixXd::Zero(3, 3), 5.0), s1.agg),
                  InvalidCovariance);
}

TEST_CASE("gamma with W = 0 coincides pointwise with the pure error at w = 0") {
  const S1 s1;
  const GaussianJammerCovariance zero = cov_of(MatrixXd::Zero(2, 2), s1.budget.power);
  for (int i = 0; i <= 400; ++i) {
    const double x = -10.0 + 0.05 * i;
    CHECK(std::abs(gamma_functional(x, zero, s1.agg, s1.priors) -
                   error_probability_at(x, 0.0, s1.agg, s1.priors)) <= 1e-15);
  }
}

TEST_CASE("gamma at the isotropic covariance matches the oracle") {
  const S1 s1;
  const GaussianJammerCovariance cov = cov_of(2.5 * MatrixXd::Identity(2, 2), s1.budget.power);
  // b^T W b = 2.5 * 5 = 12.5, effective variance 15.5.
  CHECK(std::abs(fused_jamming_variance(cov, s1.agg) - 12.5) <= 1e-12);
  CHECK(std::abs(gamma_functional(1.0, cov, s1.agg, s1.priors) - kGamma1HalfIso) <= 1e-12);

  const double s_eff = std::sqrt(15.5);
  CHECK(std::abs(gamma_functional(20.0 * s_eff, cov, s1.agg, s1.priors) - s1.priors.pi1) <= 1e-9);
}

TEST_CASE("mixed best threshold") {
  const S1 s1;
  const GaussianJammerCovariance cov = cov_of(2.5 * MatrixXd::Identity(2, 2), s1.budget.power);
  SUBCASE("equal priors keep the pure offset c") {
    CHECK(mixed_best_threshold(cov, s1.agg, s1.priors) == s1.agg.c);
    CHECK(mixed_best_threshold(cov_of(MatrixXd::Zero(2, 2), 5.0), s1.agg, s1.priors) == s1.agg.c);
  }
  SUBCASE("skewed priors shift by (b^T W b / a) log(pi0/pi1)") {
    const auto fixture = testsup::make_s1();
    const Priors skew = make_priors(0.75);
    const ChannelAggregate agg = aggregate(fixture.network, skew);
    const double lambda = mixed_best_threshold(cov, agg, skew);
    CHECK(std::abs(lambda - kMixedLambdaSkewed) <= 1e-12);

    // Grid cross-check: lambda* minimizes Gamma.
    const double s_eff = std::sqrt(agg.sigma2 + 12.5);
    const int points = 8001;
    const double lo = agg.c - 20.0 * s_eff;
    const double step = 40.0 * s_eff / (points - 1);
    double best_x = lo;
    double best_val = gamma_functional(lo, cov, agg, skew);
    for (int i = 1; i < points; ++i) {
      const double x = lo + step * i;
      const double val = gamma_functional(x, cov, agg, skew);
      if (val < best_val) {
        best_val = val;
        best_x = x;
      }
    }
    CHECK(std::abs(best_x - lambda) <= step + 1e-12);
  }
}

TEST_CASE("mixed utility values") {
  const S1 s1;
  SUBCASE("W = 0 reduces to the pure equilibrium error") {
    CHECK(std::abs(mixed_utility(cov_of(MatrixXd::Zero(2, 2), 5.0), s1.agg, s1.priors) -
                   best_response_value(s1.agg, s1.priors)) <= 1e-15);
  }
  SUBCASE("W = 2.5 I") {
    CHECK(std::abs(mixed_utility(cov_of(2.5 * MatrixXd::Identity(2, 2), 5.0), s1.agg, s1.priors) -
                   kGamma1HalfIso) <= 1e-12);
  }
  SUBCASE("W = diag(5, 0) puts all power on the strong antenna") {
    MatrixXd w = MatrixXd::Zero(2, 2);
    w(0, 0) = 5.0;
    CHECK(std::abs(mixed_utility(cov_of(w, 5.0), s1.agg, s1.priors) - kUtilityDiag50) <= 1e-12);
  }
}

TEST_CASE("mixed-vs-pure comparison") {
  const S1 s1;
  SUBCASE("W = 0 gives zero advantage") {
    const MixedComparison cmp =
        compare_mixed_vs_pure(cov_of(MatrixXd::Zero(2, 2), 5.0), s1.agg, s1.priors);
    CHECK(std::abs(cmp.advantage) <= 1e-15);
  }
  SUBCASE("W = 2.5 I advantage matches the oracle") {
    const MixedComparison cmp =
        compare_mixed_vs_pure(cov_of(2.5 * MatrixXd::Identity(2, 2), 5.0), s1.agg, s1.priors);
    CHECK(std::abs(cmp.advantage - kAdvantageHalfIso) <= 1e-12);
  }
  SUBCASE("random PSD covariances never fall below the pure value") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i) {
      const MatrixXd w = testsup::random_psd_covariance(rng, 2, s1.budget.power);
      const MixedComparison cmp =
          compare_mixed_vs_pure(cov_of(w, s1.budget.power), s1.agg, s1.priors);
      CHECK(cmp.advantage >= -1e-12);
    }
  }
}

TEST_CASE("U depends on W only through b^T W b, monotonically") {
  const S1 s1;
  // Distinct covariances with identical b^T W b = 4.
  MatrixXd w1 = MatrixXd::Zero(2, 2);
  w1(0, 0) = 1.0;
  MatrixXd w2 = MatrixXd::Zero(2, 2);
  w2(1, 1) = 4.0;
  const double u1 = mixed_utility(cov_of(w1, 5.0), s1.agg, s1.priors);
  const double u2 = mixed_utility(cov_of(w2, 5.0), s1.agg, s1.priors);
  CHECK(std::abs(u1 - u2) <= 1e-15);

  // Ordered energies give ordered utilities.
  std::mt19937_64 rng(52);
  for (int i = 0; i < 50; ++i) {
    const MatrixXd a = testsup::random_psd_covariance(rng, 2, s1.budget.power);
    const MatrixXd b = testsup::random_psd_covariance(rng, 2, s1.budget.power);
    const double ea = fused_jamming_variance(cov_of(a, 5.0), s1.agg);
    const double eb = fused_jamming_variance(cov_of(b, 5.0), s1.agg);
    const double ua = mixed_utility(cov_of(a, 5.0), s1.agg, s1.priors);
    const double ub = mixed_utility(cov_of(b, 5.0), s1.agg, s1.priors);
    if (ea <= eb) {
      CHECK(ua <= ub + 1e-15);
    } else {
      CHECK(ub <= ua + 1e-15);
    }
  }
}

TEST_CASE("max_utility_covariance saturates the trace along b") {
  const S1 s1;
  const GaussianJammerCovariance best = max_utility_covariance(s1.agg, s1.budget);
  CHECK_NOTHROW(validate_covariance(best));
  CHECK(best.W.trace() == doctest::Approx(s1.budget.power).epsilon(1e-14));
  CHECK(std::abs(fused_jamming_variance(best, s1.agg) - s1.budget.power * s1.agg.b_norm2()) <=
        1e-10);

  std::mt19937_64 rng(53);
  const double u_best = mixed_utility(best, s1.agg, s1.priors);
  for (int i = 0; i < 50; ++i) {
    const MatrixXd w = testsup::random_psd_covariance(rng, 2, s1.budget.power);
    CHECK(mixed_utility(cov_of(w, s1.budget.power), s1.agg, s1.priors) <= u_best + 1e-15);
  }
}
