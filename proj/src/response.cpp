#include "idsec/response.hpp"

#include <algorithm>
#include <cmath>

namespace idsec {

double minimize_scalar_convex(const DifferentiableFn& f, double lo, double hi,
                              const ScalarSolveSettings& settings) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
    throw InvalidParameterError("invalid minimization interval");
  if (!(settings.tolerance > 0.0) || settings.max_iterations < 1)
    throw InvalidParameterError("invalid scalar solve settings");
  if (!f.derivative)
    throw InvalidParameterError("minimize_scalar_convex needs a derivative evaluator");
  // Convexity makes the derivative nondecreasing: no sign change inside the
  // interval pins the minimum to a boundary.
  if (f.derivative(lo) >= 0.0) return lo;
  if (f.derivative(hi) <= 0.0) return hi;
  int iterations = 0;
  while (hi - lo > settings.tolerance) {
    if (++iterations > settings.max_iterations)
      throw SolverDivergedError("scalar minimization did not converge");
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine precision
    if (f.derivative(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double optimal_investment(double risk, const InfectionModel& infection,
                          const GameParams& params, const ScalarSolveSettings& settings) {
  if (!std::isfinite(risk) || risk < 0.0)
    throw InvalidParameterError("risk must be nonnegative");
  const double lo = params.invest_min, hi = params.invest_max;
  if (risk == 0.0) return lo;  // nothing to defend against
  if (infection.is_power_law()) {
    // stationarity: (1 + a)^(exponent + 1) = risk * L * exponent
    const double z = infection.exponent();
    double a = std::pow(risk * infection.loss() * z, 1.0 / (z + 1.0)) - 1.0;
    return std::clamp(a, lo, hi);
  }
  DifferentiableFn objective{
      [&](double a) { return risk * infection.loss() * infection.p(a) + a; },
      [&](double a) { return risk * infection.loss() * infection.dp(a) + 1.0; }};
  return minimize_scalar_convex(objective, lo, hi, settings);
}

double best_response_infection(double risk, const InfectionModel& infection,
                               const GameParams& params,
                               const ScalarSolveSettings& settings) {
  return infection.p(optimal_investment(risk, infection, params, settings));
}

}  // namespace idsec
