#include "idsec/social.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "idsec/response.hpp"
#include "fixed_point.hpp"

namespace idsec {

namespace {

// Assumption: derivatives of custom shapes exist only away from zero.
constexpr double kDerivativeFloor = 1e-300;

// Marginal external effect per edge, dgplus(z) * z, with the singular point
// handled per shape: the power family reduces algebraically, custom shapes
// floor the argument.
double marginal_external(const ExposureModel& exposure, double z) {
  switch (exposure.kind()) {
    case ExposureModel::Kind::power:
      return exposure.exponent() * exposure.gplus(z);
    case ExposureModel::Kind::log:
      return exposure.coef() * z / (1.0 + z);
    case ExposureModel::Kind::custom:
      if (z <= kDerivativeFloor) return 0.0;
      return exposure.dgplus(z) * z;
  }
  return 0.0;
}

// Identically zero custom exposure: the decoupled stub. Probed on a coarse
// grid; the analytic families are always nonzero.
bool exposure_is_null(const ExposureModel& exposure) {
  if (exposure.kind() != ExposureModel::Kind::custom) return false;
  for (int i = 0; i <= 32; ++i) {
    if (exposure.gplus(i / 32.0) != 0.0) return false;
  }
  return true;
}

}  // namespace

double internalized_exposure(const ExposureModel& exposure, double z) {
  if (!std::isfinite(z) || z < 0.0)
    throw InvalidParameterError("vulnerability must be nonnegative");
  if (exposure.kind() == ExposureModel::Kind::power) {
    // exact for the power family; keeps the identity theta = (1 + b) * gplus
    return (1.0 + exposure.exponent()) * exposure.gplus(z);
  }
  return exposure.gplus(z) + marginal_external(exposure, z);
}

bool internalized_exposure_increasing(const ExposureModel& exposure, double z_max) {
  if (!std::isfinite(z_max) || z_max <= 0.0)
    throw InvalidParameterError("z_max must be positive");
  switch (exposure.kind()) {
    case ExposureModel::Kind::power:
      return true;  // (1 + b) coef z^b, b > 0
    case ExposureModel::Kind::log:
      return true;  // coef (log(1 + z) + z / (1 + z))
    case ExposureModel::Kind::custom:
      break;
  }
  constexpr int kGridPoints = 1000;
  double prev = internalized_exposure(exposure, z_max / kGridPoints);
  for (int i = 2; i <= kGridPoints; ++i) {
    double cur = internalized_exposure(exposure, z_max * i / kGridPoints);
    if (!(cur > prev)) return false;
    prev = cur;
  }
  return true;
}

double social_cost(const Game& game, const StrategyProfile& profile) {
  return detail::evaluate_costs(game, profile).total;
}

double internalized_cost(const Game& game, const StrategyProfile& profile,
                         std::size_t degree) {
  if (degree < 1 || degree > game.census.max_degree())
    throw InvalidParameterError("degree out of range");
  double rho = neighbor_vulnerability(game, profile);
  double theta = internalized_exposure(game.exposure, rho);
  double a = profile.investments[degree - 1];
  return (game.params.direct_attack_prob + static_cast<double>(degree) * theta) *
             game.infection.loss() * game.infection.p(a) +
         a;
}

std::vector<double> social_cost_gradient(const Game& game, const StrategyProfile& profile) {
  detail::require_profile(game, profile);
  double rho = neighbor_vulnerability(game, profile);
  double theta = internalized_exposure(game.exposure, rho);
  const auto& masses = game.census.masses();
  const double tau = game.params.direct_attack_prob;
  const double loss = game.infection.loss();
  std::vector<double> grad(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    double d = static_cast<double>(i + 1);
    grad[i] = masses[i] *
              ((tau + d * theta) * loss * game.infection.dp(profile.investments[i]) + 1.0);
  }
  return grad;
}

EquilibriumResult solve_social_optimum(const Game& game, const FixedPointSettings& settings) {
  check_infection_shape(game.infection, game.params);
  if (!exposure_is_null(game.exposure) &&
      !internalized_exposure_increasing(game.exposure, 1.0))
    throw NonMonotoneInternalizationError(
        "internalized exposure is not strictly increasing on (0, 1]");
  detail::VulnerabilityMap map(
      game, [&game](double z) { return internalized_exposure(game.exposure, z); });
  return detail::assemble_result(map, detail::bisect_fixed_point(map, settings));
}

StrategyProfile brute_force_social_optimum(const Game& game, double grid_step) {
  if (!std::isfinite(grid_step) || grid_step <= 0.0)
    throw InvalidParameterError("grid_step must be positive");
  const double lo = game.params.invest_min, hi = game.params.invest_max;
  const std::size_t dims = game.census.max_degree();

  std::vector<double> levels;
  for (double a = lo; a < hi; a += grid_step) levels.push_back(a);
  levels.push_back(hi);

  constexpr double kBudget = 5e7;
  if (std::pow(static_cast<double>(levels.size()), static_cast<double>(dims)) > kBudget)
    throw BudgetExceededError("profile grid exceeds the evaluation budget");

  // Tables reused across grid points: p and L*p per level, plus the census
  // weights, make each profile evaluation a handful of multiplies and one
  // exposure call.
  const auto weights = weighted_fraction(game.census);
  const auto& masses = game.census.masses();
  const double tau = game.params.direct_attack_prob;
  const double loss = game.infection.loss();
  std::vector<double> p_level(levels.size()), loss_p_level(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    p_level[i] = game.infection.p(levels[i]);
    loss_p_level[i] = loss * p_level[i];
  }

  auto grid_cost = [&](const std::vector<std::size_t>& idx) {
    double rho = 0.0;
    for (std::size_t d = 0; d < dims; ++d) rho += weights[d] * p_level[idx[d]];
    double e = game.exposure.gplus(rho);
    double total = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      double dd = static_cast<double>(d + 1);
      total += masses[d] * ((tau + dd * e) * loss_p_level[idx[d]] + levels[idx[d]]);
    }
    return total;
  };

  // Lexicographic odometer scan; strict improvement keeps the smallest tie.
  std::vector<std::size_t> idx(dims, 0), best_idx(dims, 0);
  double best = grid_cost(idx);
  while (true) {
    std::size_t d = dims;
    while (d > 0) {
      --d;
      if (++idx[d] < levels.size()) break;
      idx[d] = 0;
      if (d == 0) {
        d = dims;  // odometer wrapped: scan complete
        break;
      }
    }
    if (d == dims) break;
    double c = grid_cost(idx);
    if (c < best) {
      best = c;
      best_idx = idx;
    }
  }

  StrategyProfile profile;
  profile.investments.resize(dims);
  for (std::size_t d = 0; d < dims; ++d) profile.investments[d] = levels[best_idx[d]];

  // Coordinate refinement: golden-section on a shrinking window around each
  // coordinate until the window is below the refinement target.
  constexpr double kRefineTarget = 1e-6;
  constexpr double kGolden = 0.6180339887498949;
  auto refine_coordinate = [&](std::vector<double>& a, std::size_t d, double window) {
    double wlo = std::max(lo, a[d] - window), whi = std::min(hi, a[d] + window);
    auto value = [&](double x) {
      double keep = a[d];
      a[d] = x;
      double c = social_cost(game, StrategyProfile(a));
      a[d] = keep;
      return c;
    };
    double x1 = whi - kGolden * (whi - wlo), x2 = wlo + kGolden * (whi - wlo);
    double f1 = value(x1), f2 = value(x2);
    while (whi - wlo > kRefineTarget * 0.25) {
      if (f1 <= f2) {
        whi = x2;
        x2 = x1;
        f2 = f1;
        x1 = whi - kGolden * (whi - wlo);
        f1 = value(x1);
      } else {
        wlo = x1;
        x1 = x2;
        f1 = f2;
        x2 = wlo + kGolden * (whi - wlo);
        f2 = value(x2);
      }
    }
    double candidate = 0.5 * (wlo + whi);
    if (value(candidate) <= value(a[d])) a[d] = candidate;
  };

  for (double window = std::min(grid_step, hi - lo); window > kRefineTarget * 0.5;
       window *= 0.5) {
    for (std::size_t d = 0; d < dims; ++d) refine_coordinate(profile.investments, d, window);
  }
  return profile;
}

KktReport kkt_residual(const Game& game, const StrategyProfile& profile) {
  detail::require_profile(game, profile);
  constexpr double kActiveTolerance = 1e-9;
  const double rho = neighbor_vulnerability(game, profile);
  const double theta = internalized_exposure(game.exposure, rho);
  const auto& masses = game.census.masses();
  const double tau = game.params.direct_attack_prob;
  const double loss = game.infection.loss();
  const double lo = game.params.invest_min, hi = game.params.invest_max;

  KktReport report;
  const std::size_t n = masses.size();
  report.stationarity.assign(n, 0.0);
  report.lower_multiplier.assign(n, 0.0);
  report.upper_multiplier.assign(n, 0.0);
  report.at_lower.assign(n, false);
  report.at_upper.assign(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    double a = profile.investments[i];
    report.at_lower[i] = a - lo <= kActiveTolerance;
    report.at_upper[i] = hi - a <= kActiveTolerance;
    if (masses[i] == 0.0) continue;  // empty population: objective ignores a_d
    double d = static_cast<double>(i + 1);
    // per-agent stationarity, the census mass divided out
    double r = (tau + d * theta) * loss * game.infection.dp(a) + 1.0;
    if (report.at_lower[i] && r > 0.0) {
      report.lower_multiplier[i] = r;
    } else if (report.at_upper[i] && r < 0.0) {
      report.upper_multiplier[i] = -r;
    } else {
      report.stationarity[i] = r;
    }
    report.max_abs_stationarity =
        std::max(report.max_abs_stationarity, std::abs(report.stationarity[i]));
    report.complementarity_gap =
        std::max({report.complementarity_gap,
                  std::abs(report.lower_multiplier[i] * (a - lo)),
                  std::abs(report.upper_multiplier[i] * (hi - a))});
  }
  return report;
}

PenaltySchedule penalty_schedule(const Game& game, const FixedPointSettings& settings) {
  EquilibriumResult optimum = solve_social_optimum(game, settings);
  const double rho = optimum.vulnerability;
  const double marginal = marginal_external(game.exposure, rho);
  const double indirect = game.exposure.gplus(rho);
  const double loss = game.infection.loss();
  PenaltySchedule schedule;
  const std::size_t n = game.census.max_degree();
  schedule.penalties.resize(n);
  schedule.indirect_losses.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = static_cast<double>(i + 1);
    double p = game.infection.p(optimum.profile.investments[i]);
    schedule.penalties[i] = d * marginal * loss * p;
    schedule.indirect_losses[i] = d * indirect * loss * p;
  }
  return schedule;
}

double price_of_anarchy(const Game& game, const FixedPointSettings& settings) {
  EquilibriumResult ne = solve_ne(game, settings);
  EquilibriumResult so = solve_social_optimum(game, settings);
  if (!(so.social_cost > 0.0))
    throw InvalidParameterError("social cost is not positive; ratio undefined");
  return ne.social_cost / so.social_cost;
}

}  // namespace idsec
