#include "idsec/equilibrium.hpp"

#include <cmath>
#include <utility>

#include "idsec/response.hpp"
#include "fixed_point.hpp"

namespace idsec {

namespace detail {

void require_profile(const Game& game, const StrategyProfile& profile) {
  if (profile.size() != game.census.max_degree())
    throw DimensionMismatchError("profile length does not match the census");
  for (double a : profile.investments)
    if (!std::isfinite(a)) throw InvalidParameterError("investments must be finite");
}

CostBreakdown evaluate_costs(const Game& game, const StrategyProfile& profile) {
  require_profile(game, profile);
  const auto& masses = game.census.masses();
  const auto weights = weighted_fraction(game.census);
  CostBreakdown out;
  out.per_degree.resize(masses.size());
  double rho = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i)
    rho += weights[i] * game.infection.p(profile.investments[i]);
  out.vulnerability = rho;
  out.exposure = game.exposure.gplus(rho);
  const double tau = game.params.direct_attack_prob;
  const double loss = game.infection.loss();
  for (std::size_t i = 0; i < masses.size(); ++i) {
    double d = static_cast<double>(i + 1);
    out.per_degree[i] =
        (tau + d * out.exposure) * loss * game.infection.p(profile.investments[i]) +
        profile.investments[i];
    out.total += masses[i] * out.per_degree[i];
  }
  return out;
}

VulnerabilityMap::VulnerabilityMap(const Game& game, std::function<double(double)> shape)
    : game_(game), shape_(std::move(shape)), weights_(weighted_fraction(game.census)) {}

double VulnerabilityMap::operator()(double rho) const {
  const double g = shape_(rho);
  const double tau = game_.params.direct_attack_prob;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    double risk = tau + static_cast<double>(i + 1) * g;
    acc += weights_[i] * best_response_infection(risk, game_.infection, game_.params);
  }
  return acc;
}

StrategyProfile VulnerabilityMap::best_response(double rho) const {
  const double g = shape_(rho);
  const double tau = game_.params.direct_attack_prob;
  std::vector<double> a(weights_.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double risk = tau + static_cast<double>(i + 1) * g;
    a[i] = optimal_investment(risk, game_.infection, game_.params);
  }
  return StrategyProfile(std::move(a));
}

FixedPointOutcome bisect_fixed_point(const VulnerabilityMap& map,
                                     const FixedPointSettings& settings) {
  if (!(settings.rho_tolerance > 0.0) || settings.max_iterations < 1)
    throw InvalidParameterError("invalid fixed-point settings");
  double lo = 0.0, hi = 1.0;
  // rho is a convex combination of probabilities, so the gap rho - Phi(rho)
  // is <= 0 at 0 and >= 0 at 1 for any conforming model.
  double gap_lo = lo - map(lo);
  double gap_hi = hi - map(hi);
  if (std::isnan(gap_lo) || std::isnan(gap_hi) || gap_lo > 0.0 || gap_hi < 0.0)
    throw SolverDivergedError(
        "vulnerability fixed point is not bracketed; custom model violates its contract");
  FixedPointOutcome out;
  while (hi - lo > settings.rho_tolerance) {
    if (++out.iterations > settings.max_iterations)
      throw SolverDivergedError("vulnerability fixed point did not converge");
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine precision
    if (mid - map(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  // best-effort polish: a steep map can leave the gap above tolerance even
  // on a converged interval, so keep halving until the gap itself is small
  // or the interval cannot shrink further
  double rho = 0.5 * (lo + hi);
  double gap = rho - map(rho);
  while (std::abs(gap) > settings.rho_tolerance &&
         out.iterations < settings.max_iterations) {
    ++out.iterations;
    if (gap < 0.0)
      lo = rho;
    else
      hi = rho;
    double next = 0.5 * (lo + hi);
    if (next <= lo || next >= hi) break;
    rho = next;
    gap = rho - map(rho);
  }
  out.rho = rho;
  out.residual = std::abs(gap);
  return out;
}

EquilibriumResult assemble_result(const VulnerabilityMap& map,
                                  const FixedPointOutcome& outcome) {
  EquilibriumResult result;
  result.profile = map.best_response(outcome.rho);
  auto costs = evaluate_costs(map.game(), result.profile);
  result.vulnerability = costs.vulnerability;
  result.exposure = costs.exposure;
  result.per_degree_cost = std::move(costs.per_degree);
  result.social_cost = costs.total;
  result.iterations = outcome.iterations;
  result.residual = outcome.residual;
  return result;
}

}  // namespace detail

double neighbor_vulnerability(const Game& game, const StrategyProfile& profile) {
  detail::require_profile(game, profile);
  const auto weights = weighted_fraction(game.census);
  double rho = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    rho += weights[i] * game.infection.p(profile.investments[i]);
  return rho;
}

double indirect_attack_rate(const Game& game, const StrategyProfile& profile) {
  return game.params.direct_attack_prob * game.params.indirect_attack_prob *
         neighbor_vulnerability(game, profile);
}

double risk_exposure(const Game& game, const StrategyProfile& profile) {
  return game.exposure.gplus(neighbor_vulnerability(game, profile));
}

double agent_cost(const Game& game, const StrategyProfile& profile, std::size_t degree) {
  if (degree < 1 || degree > game.census.max_degree())
    throw InvalidParameterError("degree out of range");
  return detail::evaluate_costs(game, profile).per_degree[degree - 1];
}

EquilibriumResult solve_ne(const Game& game, const FixedPointSettings& settings) {
  check_infection_shape(game.infection, game.params);
  detail::VulnerabilityMap map(game, [&game](double z) { return game.exposure.gplus(z); });
  return detail::assemble_result(map, detail::bisect_fixed_point(map, settings));
}

double verify_ne(const Game& game, const StrategyProfile& profile) {
  detail::require_profile(game, profile);
  const double e = risk_exposure(game, profile);
  const double tau = game.params.direct_attack_prob;
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    double risk = tau + static_cast<double>(i + 1) * e;
    double gap = std::abs(profile.investments[i] -
                          optimal_investment(risk, game.infection, game.params));
    worst = std::max(worst, gap);
  }
  return worst;
}

}  // namespace idsec
