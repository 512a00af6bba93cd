#pragma once

#include <cstddef>
#include <vector>

#include "idsec/equilibrium.hpp"
#include "idsec/model.hpp"

namespace idsec {

/// Exposure with the marginal external effect added back in:
/// gplus(z) + dgplus(z) * z. Reduces to (1 + exponent) * gplus(z) for the
/// power family. Custom derivative evaluations floor z at 1e-300 because the
/// shape contract only guarantees differentiability away from zero.
double internalized_exposure(const ExposureModel& exposure, double z);

/// True when the internalized exposure is strictly increasing, the condition
/// under which the modified game pins down the social optimum. Analytic for
/// the power and log families; decided on a 1000-point grid over (0, z_max]
/// for custom shapes. z_max must be positive (solvers use 1, the upper end of
/// the vulnerability range).
bool internalized_exposure_increasing(const ExposureModel& exposure, double z_max);

/// Census-weighted total cost of a profile.
double social_cost(const Game& game, const StrategyProfile& profile);

/// Per-degree cost in the modified game: the exposure term is replaced by its
/// internalized counterpart, so the external damage each investment level
/// inflicts is charged back to the agent. Never below the plain agent cost
/// for conforming shapes.
double internalized_cost(const Game& game, const StrategyProfile& profile, std::size_t degree);

/// Analytic gradient of social_cost in the profile. The cross-population
/// terms collapse through the weighted fractions into the internalized
/// exposure, giving per degree
///   mass_d * ((direct_attack_prob + d * internalized_exposure(rho)) * L * dp(a_d) + 1).
std::vector<double> social_cost_gradient(const Game& game, const StrategyProfile& profile);

/// Global minimizer of the social cost, computed as the equilibrium of the
/// modified game: the solve_ne bisection with internalized exposure in place
/// of the plain shape. Requires the internalized exposure to be strictly
/// increasing on (0, 1] and throws NonMonotoneInternalizationError otherwise;
/// an identically zero custom exposure is accepted as the decoupled special
/// case (nothing to internalize). Vulnerability, exposure and costs in the
/// result are evaluated in the original game.
EquilibriumResult solve_social_optimum(const Game& game,
                                       const FixedPointSettings& settings = {});

/// Independent check on solve_social_optimum: exhaustive search over the
/// profile grid with the given step, then coordinate-wise interval refinement
/// down to 1e-6. Grid ties break toward the lexicographically smallest
/// profile. Grids beyond 5e7 points throw BudgetExceededError; intended for
/// max_degree <= 4.
StrategyProfile brute_force_social_optimum(const Game& game, double grid_step);

/// First-order optimality report for social-cost minimization under the
/// investment box constraints.
struct KktReport {
  /// Per-degree stationarity residual in per-agent scale (census mass divided
  /// out); at an active bound the one-sided residual is moved into the
  /// matching multiplier and zero is reported here. Zero-mass degrees report
  /// zero: their investment does not enter the objective.
  std::vector<double> stationarity;
  std::vector<double> lower_multiplier;  // for a_d >= invest_min
  std::vector<double> upper_multiplier;  // for a_d <= invest_max
  std::vector<bool> at_lower;
  std::vector<bool> at_upper;
  double max_abs_stationarity = 0.0;
  double complementarity_gap = 0.0;  // max |multiplier * slack|
};

KktReport kkt_residual(const Game& game, const StrategyProfile& profile);

/// Per-degree tax aligning selfish play with the social optimum, together
/// with the expected indirect-attack losses it scales against.
struct PenaltySchedule {
  std::vector<double> penalties;        // d * dgplus(rho*) * rho* * L * p(a*_d)
  std::vector<double> indirect_losses;  // d * gplus(rho*) * L * p(a*_d)
};

/// Solves the social optimum and evaluates the penalty schedule there. For a
/// power exposure the penalty is exactly the exponent times the indirect
/// losses.
PenaltySchedule penalty_schedule(const Game& game, const FixedPointSettings& settings = {});

/// Social cost at the Nash equilibrium divided by the optimal social cost.
/// At least 1 up to solver tolerance; the equilibrium is unique, so no
/// worst-case search over equilibria is involved.
double price_of_anarchy(const Game& game, const FixedPointSettings& settings = {});

}  // namespace idsec
