#pragma once

// Internal: scalar fixed-point core shared by the equilibrium and social
// optimum solvers. Not installed.

#include <functional>
#include <vector>

#include "idsec/equilibrium.hpp"
#include "idsec/model.hpp"

namespace idsec::detail {

// Cost summary of a profile, evaluated once.
struct CostBreakdown {
  double vulnerability = 0.0;
  double exposure = 0.0;
  std::vector<double> per_degree;
  double total = 0.0;
};

CostBreakdown evaluate_costs(const Game& game, const StrategyProfile& profile);

void require_profile(const Game& game, const StrategyProfile& profile);

// Phi(rho) = sum_d w_d p(optimal_investment(tau + d * shape(rho))).
// shape is the plain exposure for the NE and the internalized exposure for
// the social optimum; either way Phi is nonincreasing on [0, 1].
class VulnerabilityMap {
 public:
  VulnerabilityMap(const Game& game, std::function<double(double)> shape);

  double operator()(double rho) const;
  StrategyProfile best_response(double rho) const;
  const Game& game() const { return game_; }

 private:
  const Game& game_;
  std::function<double(double)> shape_;
  std::vector<double> weights_;
};

struct FixedPointOutcome {
  double rho = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Bisection on rho - Phi(rho) over [0, 1].
FixedPointOutcome bisect_fixed_point(const VulnerabilityMap& map,
                                     const FixedPointSettings& settings);

EquilibriumResult assemble_result(const VulnerabilityMap& map,
                                  const FixedPointOutcome& outcome);

}  // namespace idsec::detail
