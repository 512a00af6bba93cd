#include <cmath>
#include <random>

#include "doctest.h"
#include "idsec/response.hpp"

using namespace idsec;

namespace {

// Grid scan plus golden-section refinement, kept deliberately independent of
// the bisection the library uses.
double grid_minimum(const std::function<double(double)>& f, double lo, double hi) {
  const double step = 1e-4;
  double best_a = lo, best_v = f(lo);
  for (double a = lo; a <= hi; a += step) {
    double v = f(a);
    if (v < best_v) {
      best_v = v;
      best_a = a;
    }
  }
  double wlo = std::max(lo, best_a - step), whi = std::min(hi, best_a + step);
  const double golden = 0.6180339887498949;
  for (int i = 0; i < 120 && whi - wlo > 1e-12; ++i) {
    double m1 = whi - golden * (whi - wlo);
    double m2 = wlo + golden * (whi - wlo);
    if (f(m1) < f(m2))
      whi = m2;
    else
      wlo = m1;
  }
  return 0.5 * (wlo + whi);
}

}  // namespace

TEST_CASE("minimize_scalar_convex") {
  DifferentiableFn parabola{[](double a) { return (a - 3.0) * (a - 3.0); },
                            [](double a) { return 2.0 * (a - 3.0); }};
  CHECK(minimize_scalar_convex(parabola, 0.0, 10.0) == doctest::Approx(3.0).epsilon(1e-8));
  // Positive derivative at the lower edge pins the minimum there, exactly.
  CHECK(minimize_scalar_convex(parabola, 5.0, 10.0) == 5.0);
  CHECK(minimize_scalar_convex(parabola, -4.0, 2.0) == 2.0);

  DifferentiableFn agent{
      [](double a) { return 7.0 * std::pow(1.0 + a, -1.5) + a; },
      [](double a) { return -10.5 * std::pow(1.0 + a, -2.5) + 1.0; }};
  CHECK(minimize_scalar_convex(agent, 0.0, 1000.0) ==
        doctest::Approx(1.5613900588559146).epsilon(1e-8));

  CHECK_THROWS_AS(minimize_scalar_convex(parabola, 5.0, 4.0), InvalidParameterError);
  CHECK_THROWS_AS(minimize_scalar_convex(parabola, 0.0, std::nan("")),
                  InvalidParameterError);
  CHECK_THROWS_AS(minimize_scalar_convex({nullptr, nullptr}, 0.0, 1.0),
                  InvalidParameterError);

  ScalarSolveSettings bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(minimize_scalar_convex(parabola, 0.0, 10.0, bad), InvalidParameterError);
  bad.tolerance = 1e-10;
  bad.max_iterations = 0;
  CHECK_THROWS_AS(minimize_scalar_convex(parabola, 0.0, 10.0, bad), InvalidParameterError);
}

TEST_CASE("optimal_investment closed form") {
  auto inf = InfectionModel::power_law(1.5, 10.0);
  GameParams params;

  CHECK(optimal_investment(0.0, inf, params) == params.invest_min);
  CHECK(optimal_investment(0.7, inf, params) ==
        doctest::Approx(1.5613900588559146).epsilon(1e-12));
  // Enormous risk clamps to the upper investment bound.
  CHECK(optimal_investment(1e12, inf, params) == params.invest_max);

  CHECK_THROWS_AS(optimal_investment(-0.5, inf, params), InvalidParameterError);
  CHECK_THROWS_AS(optimal_investment(std::nan(""), inf, params), InvalidParameterError);

  // Interior solutions satisfy first-order stationarity.
  for (double risk : {0.3, 0.7, 2.0, 5.0}) {
    double a = optimal_investment(risk, inf, params);
    CHECK(std::abs(risk * inf.loss() * inf.dp(a) + 1.0) <= 1e-8);
  }
}

TEST_CASE("optimal_investment custom model matches closed form") {
  auto closed = InfectionModel::power_law(1.5, 10.0);
  auto opaque = InfectionModel::custom(
      [](double a) { return std::pow(1.0 + a, -1.5); },
      [](double a) { return -1.5 * std::pow(1.0 + a, -2.5); }, 10.0);
  GameParams params;
  for (double risk : {0.1, 0.7, 1.3, 4.0}) {
    CHECK(optimal_investment(risk, opaque, params) ==
          doctest::Approx(optimal_investment(risk, closed, params)).epsilon(1e-8));
  }
}

TEST_CASE("optimal_investment nondecreasing in risk") {
  auto inf = InfectionModel::power_law(2.0, 10.0);
  GameParams params;
  std::mt19937 rng(7151u);
  std::uniform_real_distribution<double> draw(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    double r1 = draw(rng), r2 = draw(rng);
    if (r1 > r2) std::swap(r1, r2);
    CHECK(optimal_investment(r1, inf, params) <=
          optimal_investment(r2, inf, params) + 1e-12);
  }
}

TEST_CASE("best_response_infection") {
  auto inf = InfectionModel::power_law(1.5, 10.0);
  GameParams params;
  CHECK(best_response_infection(0.0, inf, params) == 1.0);
  CHECK(best_response_infection(0.7, inf, params) ==
        doctest::Approx(0.24394191036722996).epsilon(1e-12));
  double prev = 1.0;
  for (double risk = 0.0; risk <= 3.0; risk += 0.1) {
    double cur = best_response_infection(risk, inf, params);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("optimal_investment agrees with a grid oracle") {
  std::mt19937 rng(90210u);
  std::uniform_real_distribution<double> risk_draw(0.0, 5.0);
  std::uniform_real_distribution<double> zeta_draw(1.1, 3.0);
  GameParams params;
  for (int trial = 0; trial < 100; ++trial) {
    const double risk = risk_draw(rng);
    const double zeta = zeta_draw(rng);
    auto inf = InfectionModel::power_law(zeta, 10.0);
    auto objective = [&](double a) { return risk * inf.loss() * inf.p(a) + a; };
    // With risk <= 5, L = 10, zeta <= 3 the optimum stays well below 25.
    double expect = grid_minimum(objective, 0.0, 25.0);
    double got = optimal_investment(risk, inf, params);
    CHECK(std::abs(got - expect) <= 1e-6);
  }
}
