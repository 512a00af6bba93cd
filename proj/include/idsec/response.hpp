#pragma once

#include <functional>

#include "idsec/model.hpp"

namespace idsec {

/// Controls for the one-dimensional convex minimizer.
struct ScalarSolveSettings {
  double tolerance = 1e-10;  // final bracket width on the argument
  int max_iterations = 200;
};

/// A scalar objective paired with its analytic derivative.
struct DifferentiableFn {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Minimizer of a strictly convex differentiable objective on [lo, hi].
/// Bisects on the derivative sign and clamps to a boundary when the
/// derivative does not change sign inside the interval.
double minimize_scalar_convex(const DifferentiableFn& f, double lo, double hi,
                              const ScalarSolveSettings& settings = {});

/// Cost-minimizing investment of an agent expecting `risk` attacks:
/// argmin over the investment interval of risk * L * p(a) + a. Closed form
/// for the power-law infection family, derivative bisection otherwise.
/// risk must be nonnegative; zero risk returns invest_min. Interior
/// solutions satisfy risk * L * dp(a) + 1 = 0; the minimizer is nondecreasing
/// in risk and strictly increasing while interior.
double optimal_investment(double risk, const InfectionModel& infection,
                          const GameParams& params,
                          const ScalarSolveSettings& settings = {});

/// Infection probability at the optimal investment,
/// p(optimal_investment(risk)). Nonincreasing in risk; equals p(invest_min)
/// at risk = 0.
double best_response_infection(double risk, const InfectionModel& infection,
                               const GameParams& params,
                               const ScalarSolveSettings& settings = {});

}  // namespace idsec
