#pragma once

#include <cstddef>

#include "idsec/model.hpp"

namespace idsec {

/// Controls for the equilibrium fixed-point bisection.
struct FixedPointSettings {
  double rho_tolerance = 1e-12;
  int max_iterations = 400;
};

/// Average infection probability across edge endpoints, w(s) . p(a): the
/// chance that a randomly traversed edge leads to a vulnerable neighbor.
double neighbor_vulnerability(const Game& game, const StrategyProfile& profile);

/// Expected one-hop indirect attacks per directed edge:
/// direct_attack_prob * indirect_attack_prob * neighbor_vulnerability.
double indirect_attack_rate(const Game& game, const StrategyProfile& profile);

/// Expected indirect attacks per unit degree, e = gplus(rho) at the profile's
/// neighbor vulnerability.
double risk_exposure(const Game& game, const StrategyProfile& profile);

/// Expected total cost of a degree-d agent under the profile:
/// (direct_attack_prob + d * e) * L * p(a_d) + a_d.
double agent_cost(const Game& game, const StrategyProfile& profile, std::size_t degree);

/// The unique Nash equilibrium. The per-degree best responses depend on the
/// profile only through the neighbor vulnerability, so the equilibrium is the
/// root of rho - Phi(rho) on [0, 1] where Phi composes the best responses
/// with the exposure shape; Phi is nonincreasing, making the bracket valid
/// for every conforming model. Custom infection models are shape-checked
/// first. Throws SolverDivergedError when the bracket or iteration budget
/// fails, a symptom of a nonconforming custom model.
EquilibriumResult solve_ne(const Game& game, const FixedPointSettings& settings = {});

/// Best-response residual of a profile: max over degrees of
/// |a_d - optimal_investment(risk_d)| with risks evaluated at the exposure
/// the profile itself induces. Zero (to solver precision) exactly at the
/// Nash equilibrium; an NE certificate when at most 1e-8.
double verify_ne(const Game& game, const StrategyProfile& profile);

}  // namespace idsec
