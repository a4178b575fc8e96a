#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "jamnet/io.hpp"
#include "support/scenarios.hpp"

using namespace jamnet;
using jamnet::io::json;

namespace {

json s1_json() {
  return json::parse(R"({
    "network": {
      "alpha": [1.0, 1.0],
      "phi": [1.0, 1.0],
      "beta": [[1.0], [1.0]],
      "psi": [1.0],
      "sigma_s": 1.0,
      "sigma_fc": 1.0
    },
    "priors": { "pi0": 0.5 },
    "jammer": { "power": 5.0 }
  })");
}

}  // namespace

TEST_CASE("scenario parsing fills every field and re-validates") {
  const io::Scenario scenario = io::scenario_from_json(s1_json());
  CHECK(scenario.network.sensors() == 2);
  CHECK(scenario.network.sensing_antennas() == 1);
  CHECK(scenario.network.fc_antennas() == 1);
  CHECK(scenario.priors.pi0 == 0.5);
  CHECK(scenario.priors.pi1 == 0.5);
  CHECK(scenario.budget.power == 5.0);
  CHECK(scenario.game.lambda_grid == 2000);
  CHECK(scenario.game.w_samples == 10000);

  const ChannelAggregate agg = aggregate(scenario.network, scenario.priors);
  CHECK(agg.a == 2.0);
  CHECK(agg.c == 1.0);
}

TEST_CASE("scenario parsing is strict about keys") {
  json j = s1_json();
  j["extra"] = 1;
  CHECK_THROWS_AS(io::scenario_from_json(j), ValidationError);

  json j2 = s1_json();
  j2["network"]["gamma"] = 3;
  CHECK_THROWS_AS(io::scenario_from_json(j2), ValidationError);

  json j3 = s1_json();
  j3["priors"]["pi1"] = 0.5;  // pi1 is derived, not accepted
  CHECK_THROWS_AS(io::scenario_from_json(j3), ValidationError);

  json j4 = s1_json();
  j4.erase("jammer");
  CHECK_THROWS_AS(io::scenario_from_json(j4), ValidationError);
}

TEST_CASE("scenario parsing rejects invalid payloads") {
  json ragged = s1_json();
  ragged["network"]["beta"] = json::array({json::array({1.0}), json::array({1.0, 2.0})});
  CHECK_THROWS_AS(io::scenario_from_json(ragged), DimensionMismatch);

  json bad_prior = s1_json();
  bad_prior["priors"]["pi0"] = 1.0;
  CHECK_THROWS_AS(io::scenario_from_json(bad_prior), ParameterOutOfRange);

  json negative_power = s1_json();
  negative_power["jammer"]["power"] = -1.0;
  CHECK_THROWS_AS(io::scenario_from_json(negative_power), ParameterOutOfRange);

  json degenerate = s1_json();
  degenerate["network"]["phi"] = json::array({0.0, 0.0});
  CHECK_THROWS_AS(io::scenario_from_json(degenerate), DegenerateModel);

  json text_gain = s1_json();
  text_gain["network"]["alpha"] = json::array({"one", "one"});
  CHECK_THROWS_AS(io::scenario_from_json(text_gain), ValidationError);

  json low_bound = s1_json();
  low_bound["game"] = json{{"threshold_bound", 2.0}};  // below the derived floor
  CHECK_THROWS_AS(io::scenario_from_json(low_bound), ParameterOutOfRange);
}

TEST_CASE("beta and psi default to empty blocks") {
  json j = s1_json();
  j["network"].erase("beta");
  j["network"].erase("psi");
  const io::Scenario scenario = io::scenario_from_json(j);
  CHECK(scenario.network.sensing_antennas() == 0);
  CHECK(scenario.network.fc_antennas() == 0);
  const ChannelAggregate agg = aggregate(scenario.network, scenario.priors);
  CHECK(agg.b.size() == 0);
}

TEST_CASE("game tolerances are accepted") {
  json j = s1_json();
  j["game"] = json{{"lambda_grid", 3000}, {"tolerances", json{{"identity", 1e-10}}}};
  const io::Scenario scenario = io::scenario_from_json(j);
  CHECK(scenario.game.lambda_grid == 3000);
  CHECK(scenario.game.identity_tol == 1e-10);

  j["game"]["tolerances"]["unknown"] = 1;
  CHECK_THROWS_AS(io::scenario_from_json(j), ValidationError);
}

TEST_CASE("covariance parsing, row-major") {
  const json j = json::parse(R"({"dim": 2, "data": [1.0, 0.5, 0.5, 2.0]})");
  const MatrixXd w = io::covariance_from_json(j);
  CHECK(w(0, 0) == 1.0);
  CHECK(w(0, 1) == 0.5);
  CHECK(w(1, 0) == 0.5);
  CHECK(w(1, 1) == 2.0);

  CHECK_THROWS_AS(io::covariance_from_json(json::parse(R"({"dim": 2, "data": [1, 2, 3]})")),
                  DimensionMismatch);
  CHECK_THROWS_AS(io::covariance_from_json(json::parse(R"({"dim": 1.5, "data": []})")),
                  ValidationError);
  CHECK_THROWS_AS(io::covariance_from_json(json::parse(R"({"data": [1]})")), ValidationError);
}

TEST_CASE("format_double round-trips exactly") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unif(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = unif(rng);
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("report serialization round-trips under the published schema") {
  const auto s1 = testsup::make_s1();
  const ChannelAggregate agg = aggregate(s1.network, s1.priors);

  SUBCASE("structure report: json and two-column csv") {
    const StructureReport report = check_unimodal_in_threshold(
        Eigen::Vector2d::Zero(), agg, s1.priors, ThresholdGrid{10.0, 101});
    const json j = io::to_json(report);
    CHECK(j.at("unimodal").get<bool>() == report.unimodal);
    CHECK(j.at("argmin").get<double>() == report.argmin);
    CHECK(j.at("grid").size() == 101);
    CHECK(j.at("values").size() == 101);

    const std::string csv = io::to_csv(report);
    CHECK(csv.rfind("lambda,pe\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
  }

  SUBCASE("saddle report keeps the witnesses") {
    SaddleAuditSpec spec;
    spec.w_samples = 100;
    const PureStrategyProfile center =
        equilibrium_family(EquilibriumParameter{Eigen::Vector2d::Zero()}, agg, s1.budget);
    const SaddleReport report = verify_saddle(center, agg, s1.priors, s1.budget, spec);
    const json j = io::to_json(report);
    CHECK(j.at("profile").at("lambda").get<double>() == center.threshold);
    CHECK(j.at("jammer_witness_w").size() == 2);
    CHECK(j.at("holds_fc_side").get<bool>());
    CHECK(j.at("samples").get<std::int64_t>() == report.samples);
  }

  SUBCASE("dynamics trace labels every half-step") {
    const DynamicsTrace trace =
        run_dynamics(PureStrategyProfile{0.0, Eigen::Vector2d::Zero()}, PlayOrder::jammer_first,
                     agg, s1.priors, s1.budget);
    const json j = io::to_json(trace, agg, s1.priors);
    CHECK(j.at("order").get<std::string>() == "jammer_first");
    CHECK(j.at("steps").at(0).at("player").get<std::string>() == "initial");
    CHECK(j.at("steps").at(1).at("player").get<std::string>() == "jammer");
    CHECK(j.at("converged").get<bool>());

    const std::string csv = io::to_csv(trace, agg, s1.priors);
    CHECK(csv.rfind("half_step,player,lambda,w0,w1,pe\n", 0) == 0);
  }

  SUBCASE("monte carlo estimate") {
    const MonteCarloEstimate est = simulate_error(
        PureStrategyProfile{1.0, Eigen::Vector2d::Zero()}, s1.network, s1.priors, 1000, 3);
    const json j = io::to_json(est);
    CHECK(j.at("estimate").get<double>() == est.estimate);
    CHECK(j.at("trials").get<std::int64_t>() == 1000);
    CHECK(j.at("stderr").get<double>() == est.std_error);
    CHECK(j.at("seed").get<std::uint64_t>() == 3);
    CHECK(io::to_csv(est).rfind("estimate,trials,stderr,seed\n", 0) == 0);
  }
}
