#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "idsec/equilibrium.hpp"
#include "idsec/response.hpp"

using namespace idsec;

namespace {

Game reference_game(double alpha, std::size_t d_max = 20) {
  return Game(power_law_census(alpha, d_max), InfectionModel::power_law(1.5, 10.0),
              ExposureModel::power(30.0, 1.1), GameParams{});
}

ExposureModel zero_exposure() {
  return ExposureModel::custom([](double) { return 0.0; }, [](double) { return 0.0; });
}

// Damped fixed-point iteration built from the public best-response pieces,
// independent of the bisection inside solve_ne.
double damped_rho(const Game& game, double start) {
  const auto w = weighted_fraction(game.census);
  auto phi = [&](double rho) {
    const double g = game.exposure.gplus(rho);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      double risk = game.params.direct_attack_prob + static_cast<double>(i + 1) * g;
      acc += w[i] * best_response_infection(risk, game.infection, game.params);
    }
    return acc;
  };
  double rho = start;
  double eta = 0.5;
  double gap = std::abs(rho - phi(rho));
  for (int it = 0; it < 4000 && gap > 1e-13; ++it) {
    double next = (1.0 - eta) * rho + eta * phi(rho);
    double next_gap = std::abs(next - phi(next));
    if (next_gap >= gap && eta > 1e-6) {
      eta *= 0.5;  // overshoot: damp harder
      continue;
    }
    rho = next;
    gap = next_gap;
  }
  return rho;
}

}  // namespace

TEST_CASE("neighbor_vulnerability") {
  Game game(PopulationVector({0.5, 0.5}), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(30.0, 1.1), GameParams{});

  // A uniform profile collapses the average to a single infection probability.
  StrategyProfile uniform(std::vector<double>{2.0, 2.0});
  CHECK(neighbor_vulnerability(game, uniform) ==
        doctest::Approx(game.infection.p(2.0)).epsilon(1e-15));

  StrategyProfile bare(std::vector<double>{0.0, 0.0});
  CHECK(neighbor_vulnerability(game, bare) == doctest::Approx(1.0).epsilon(1e-15));

  StrategyProfile mixed(std::vector<double>{1.0, 2.0});
  CHECK(neighbor_vulnerability(game, mixed) ==
        doctest::Approx(0.24615119001767476).epsilon(1e-14));

  CHECK_THROWS_AS(neighbor_vulnerability(game, StrategyProfile(std::vector<double>{1.0})),
                  DimensionMismatchError);
  CHECK_THROWS_AS(
      neighbor_vulnerability(game, StrategyProfile(std::vector<double>{1.0, std::nan("")})),
      InvalidParameterError);
}

TEST_CASE("indirect_attack_rate") {
  Game game(PopulationVector({0.5, 0.5}), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(30.0, 1.1), GameParams{});
  StrategyProfile mixed(std::vector<double>{1.0, 2.0});
  CHECK(indirect_attack_rate(game, mixed) ==
        doctest::Approx(0.17230583301237233).epsilon(1e-14));

  GameParams certain;
  certain.direct_attack_prob = 1.0;
  certain.indirect_attack_prob = 1.0;
  Game sure(PopulationVector({0.5, 0.5}), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(30.0, 1.1), certain);
  CHECK(indirect_attack_rate(sure, mixed) ==
        doctest::Approx(neighbor_vulnerability(sure, mixed)).epsilon(1e-15));
}

TEST_CASE("risk_exposure") {
  // Uniform investment tuned so the vulnerability is exactly one half.
  const double half_a = std::pow(2.0, 2.0 / 3.0) - 1.0;
  Game quad(PopulationVector({0.5, 0.5}), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(30.0, 2.0), GameParams{});
  StrategyProfile at_half(std::vector<double>{half_a, half_a});
  CHECK(risk_exposure(quad, at_half) == doctest::Approx(7.5).epsilon(1e-13));

  Game game(PopulationVector({0.5, 0.5}), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(30.0, 1.1), GameParams{});
  StrategyProfile mixed(std::vector<double>{1.0, 2.0});
  CHECK(risk_exposure(game, mixed) ==
        doctest::Approx(6.4186454706949445).epsilon(1e-13));
}

TEST_CASE("agent_cost") {
  Game game(PopulationVector({0.5, 0.5}), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(1.0, 1.0), GameParams{});
  StrategyProfile bare(std::vector<double>{0.0, 0.0});
  // rho = 1, e = 1: cost_d = (0.7 + d) * 10.
  CHECK(agent_cost(game, bare, 1) == doctest::Approx(17.0).epsilon(1e-14));
  CHECK(agent_cost(game, bare, 2) == doctest::Approx(27.0).epsilon(1e-14));

  CHECK_THROWS_AS(agent_cost(game, bare, 0), InvalidParameterError);
  CHECK_THROWS_AS(agent_cost(game, bare, 3), InvalidParameterError);

  // With equal investments the cost grows in the degree.
  Game ref = reference_game(1.5);
  StrategyProfile level(std::vector<double>(20, 1.0));
  double prev = agent_cost(ref, level, 1);
  for (std::size_t d = 2; d <= 20; ++d) {
    double cur = agent_cost(ref, level, d);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("solve_ne decoupled game") {
  Game game(power_law_census(1.5, 8), InfectionModel::power_law(1.5, 10.0),
            zero_exposure(), GameParams{});
  auto res = solve_ne(game);
  const double lone = optimal_investment(0.7, game.infection, game.params);
  for (double a : res.profile.investments)
    CHECK(a == doctest::Approx(lone).epsilon(1e-10));
  CHECK(res.exposure == 0.0);
  CHECK(res.vulnerability ==
        doctest::Approx(game.infection.p(lone)).epsilon(1e-10));
  // Without exposure the social cost no longer depends on the census.
  CHECK(res.social_cost ==
        doctest::Approx(0.7 * 10.0 * game.infection.p(lone) + lone).epsilon(1e-10));
}

TEST_CASE("solve_ne single degree") {
  Game game(PopulationVector({1.0}), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(30.0, 2.0), GameParams{});
  auto res = solve_ne(game);
  CHECK(res.vulnerability == doctest::Approx(0.15778936318242977).epsilon(1e-10));
  CHECK(res.profile.investments[0] == doctest::Approx(2.4246394172328129).epsilon(1e-9));
  CHECK(res.exposure == doctest::Approx(0.74692449400550167).epsilon(1e-9));
  CHECK(res.residual <= 1e-12);
  CHECK(res.iterations > 0);
  CHECK(verify_ne(game, res.profile) <= 1e-8);
}

TEST_CASE("solve_ne reference census") {
  Game game = reference_game(1.5);
  auto res = solve_ne(game);
  CHECK(res.vulnerability == doctest::Approx(0.060644385236568288).epsilon(1e-10));
  CHECK(res.exposure == doctest::Approx(1.3746461257036064).epsilon(1e-9));
  CHECK(res.exposure ==
        doctest::Approx(game.exposure.gplus(res.vulnerability)).epsilon(1e-15));
  CHECK(res.residual <= 1e-12);
  CHECK(res.per_degree_cost.size() == 20);

  // Higher degree means more indirect risk, so more investment.
  for (std::size_t i = 1; i < res.profile.size(); ++i)
    CHECK(res.profile.investments[i] >= res.profile.investments[i - 1] - 1e-12);

  CHECK(verify_ne(game, res.profile) <= 1e-8);

  // Social cost recomputes from the parts.
  double total = 0.0;
  const auto& masses = game.census.masses();
  for (std::size_t i = 0; i < masses.size(); ++i)
    total += masses[i] * res.per_degree_cost[i];
  CHECK(res.social_cost == doctest::Approx(total).epsilon(1e-13));
}

TEST_CASE("solve_ne rejects nonconforming custom infection") {
  auto rising = InfectionModel::custom([](double a) { return std::min(1.0, 0.5 + a); },
                                       [](double) { return 1.0; }, 10.0);
  Game game(PopulationVector({1.0}), rising, ExposureModel::power(30.0, 1.1),
            GameParams{});
  CHECK_THROWS_AS(solve_ne(game), InvalidParameterError);
}

TEST_CASE("solve_ne iteration budget") {
  Game game = reference_game(1.5);
  FixedPointSettings tight;
  tight.max_iterations = 2;
  CHECK_THROWS_AS(solve_ne(game, tight), SolverDivergedError);
  FixedPointSettings bad;
  bad.rho_tolerance = 0.0;
  CHECK_THROWS_AS(solve_ne(game, bad), InvalidParameterError);
}

TEST_CASE("verify_ne flags perturbed profiles") {
  Game game = reference_game(1.5);
  auto res = solve_ne(game);

  auto nudged = res.profile;
  nudged.investments[0] += 0.1;
  // Extra investment only lowers everyone's exposure, so the best response
  // moves away from the nudge and the residual must cover it.
  CHECK(verify_ne(game, nudged) >= 0.1 - 1e-8);

  StrategyProfile idle(std::vector<double>(20, 0.0));
  CHECK(verify_ne(game, idle) == doctest::Approx(37.185594500897135).epsilon(1e-9));
}

TEST_CASE("fixed point is unique across starts") {
  Game game = reference_game(1.0, 12);
  auto res = solve_ne(game);
  std::mt19937 rng(4242u);
  std::uniform_real_distribution<double> start(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    double rho = damped_rho(game, start(rng));
    CHECK(std::abs(rho - res.vulnerability) <= 1e-9);
  }
}

TEST_CASE("best-response map is nonincreasing") {
  Game game = reference_game(1.5);
  const auto w = weighted_fraction(game.census);
  auto phi = [&](double rho) {
    const double g = game.exposure.gplus(rho);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      double risk = game.params.direct_attack_prob + static_cast<double>(i + 1) * g;
      acc += w[i] * best_response_infection(risk, game.infection, game.params);
    }
    return acc;
  };
  double prev = phi(0.0);
  for (int i = 1; i < 50; ++i) {
    double cur = phi(i / 49.0);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("equilibrium is invariant to census scale") {
  std::vector<double> raw{5.0, 3.0, 2.0, 1.0, 0.5};
  Game base(PopulationVector(raw), InfectionModel::power_law(1.5, 10.0),
            ExposureModel::power(30.0, 1.1), GameParams{});
  auto want = solve_ne(base);
  for (double phi : {0.5, 2.0, 10.0}) {
    auto scaled_raw = raw;
    for (double& m : scaled_raw) m *= phi;
    Game scaled(PopulationVector(scaled_raw), InfectionModel::power_law(1.5, 10.0),
                ExposureModel::power(30.0, 1.1), GameParams{});
    auto got = solve_ne(scaled);
    CHECK(std::abs(got.vulnerability - want.vulnerability) <= 1e-10);
    CHECK(std::abs(got.social_cost - want.social_cost) <= 1e-10);
    for (std::size_t i = 0; i < raw.size(); ++i)
      CHECK(std::abs(got.profile.investments[i] - want.profile.investments[i]) <= 1e-10);
  }
}
