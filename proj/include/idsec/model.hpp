#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "idsec/errors.hpp"

namespace idsec {

/// Mass of agents per node degree. Degrees run 1..max_degree(); index d-1
/// stores the mass of degree d. Construction validates the entries (finite,
/// nonnegative, at least one positive) and silently rescales them to sum to
/// one; an input already within 1e-12 of unit mass is kept as given.
class PopulationVector {
 public:
  explicit PopulationVector(std::vector<double> masses);

  std::size_t max_degree() const { return masses_.size(); }
  const std::vector<double>& masses() const { return masses_; }

  /// Mass of agents with the given degree (1-based).
  double mass(std::size_t degree) const;

 private:
  std::vector<double> masses_;
};

/// Rescales raw masses to a unit-sum census.
PopulationVector normalize(std::vector<double> masses);

/// Fraction of agents per degree; sums to one.
std::vector<double> degree_fraction(const PopulationVector& census);

/// Fraction of edge endpoints attached to agents of each degree,
/// w_d = d * s_d / sum_k k * s_k. Sums to one; zero-mass degrees get zero.
std::vector<double> weighted_fraction(const PopulationVector& census);

/// Mean degree of the census.
double avg_degree(const PopulationVector& census);

/// Census with mass proportional to d^-alpha for d = 1..d_max.
/// alpha must be nonnegative and finite; d_max at least 1.
PopulationVector power_law_census(double alpha, std::size_t d_max);

/// Infection probability p(a) as a function of security investment a,
/// together with the expected loss per infection. The contract requires p
/// continuous, strictly decreasing and strictly convex with values in [0,1];
/// the built-in power-law family satisfies it by construction, custom
/// evaluators are vetted by check_infection_shape before equilibrium solves.
class InfectionModel {
 public:
  /// p(a) = (1 + a)^-exponent with exponent > 0.
  static InfectionModel power_law(double exponent, double loss);

  /// Arbitrary evaluators for p and its derivative dp. Shape is not checked
  /// here; direct cost evaluation accepts any evaluator, solvers do not.
  static InfectionModel custom(std::function<double(double)> p,
                               std::function<double(double)> dp, double loss);

  double p(double a) const;
  double dp(double a) const;
  double loss() const { return loss_; }
  bool is_power_law() const { return power_; }

  /// Decay exponent; power-law models only.
  double exponent() const;

 private:
  InfectionModel() = default;

  bool power_ = true;
  double exponent_ = 1.0;
  double loss_ = 1.0;
  std::function<double(double)> p_, dp_;
};

/// Grid check (100 points across the investment interval) that a custom
/// infection model is a probability, strictly decreasing and strictly convex.
/// Power-law models pass immediately. Violations throw InvalidParameterError.
void check_infection_shape(const InfectionModel& infection, const struct GameParams& params);

/// Risk exposure shape: the expected number of indirect attacks per unit
/// degree is gplus(rho) where rho is the neighbor vulnerability. The direct
/// and per-edge attack probabilities are already folded into the coefficient,
/// so evaluation takes rho itself. The contract requires gplus(0) = 0 and
/// gplus strictly increasing; custom evaluators are not validated, which
/// deliberately admits degenerate test stubs such as the zero map.
class ExposureModel {
 public:
  enum class Kind { power, log, custom };

  /// gplus(z) = coef * z^exponent with coef > 0, exponent > 0.
  static ExposureModel power(double coef, double exponent);

  /// gplus(z) = coef * log(1 + z) with coef > 0.
  static ExposureModel log_shape(double coef);

  static ExposureModel custom(std::function<double(double)> gplus,
                              std::function<double(double)> dgplus);

  double gplus(double z) const;
  double dgplus(double z) const;
  Kind kind() const { return kind_; }

  /// Scale coefficient; power and log shapes only.
  double coef() const;
  /// Power exponent; power shapes only.
  double exponent() const;

 private:
  ExposureModel() = default;

  Kind kind_ = Kind::power;
  double coef_ = 1.0;
  double exponent_ = 1.0;
  std::function<double(double)> gplus_, dgplus_;
};

/// Attack-process constants and the investment interval.
struct GameParams {
  double direct_attack_prob = 0.7;    // probability of a direct attack, in [0, 1]
  double indirect_attack_prob = 1.0;  // per-edge transmission probability, in (0, 1]
  double invest_min = 0.0;
  double invest_max = 1000.0;
};

/// Throws InvalidParameterError unless all fields are finite, the
/// probabilities lie in their ranges and invest_min < invest_max.
void validate(const GameParams& params);

/// One population game: census, infection model, exposure shape, constants.
struct Game {
  Game(PopulationVector census, InfectionModel infection, ExposureModel exposure,
       GameParams params);

  PopulationVector census;
  InfectionModel infection;
  ExposureModel exposure;
  GameParams params;
};

/// Investment level per degree, aligned with a census (index d-1 holds the
/// strategy of degree d). Solver outputs stay within the investment interval.
struct StrategyProfile {
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<double> a) : investments(std::move(a)) {}

  std::vector<double> investments;

  std::size_t size() const { return investments.size(); }
};

/// Output of solve_ne and solve_social_optimum. Vulnerability, exposure and
/// the costs are always evaluated in the original game at the returned
/// profile, whichever solver produced it.
struct EquilibriumResult {
  StrategyProfile profile;
  double vulnerability = 0.0;  // w(s) . p(profile)
  double exposure = 0.0;       // gplus(vulnerability)
  std::vector<double> per_degree_cost;
  double social_cost = 0.0;
  int iterations = 0;
  double residual = 0.0;  // fixed-point gap at the solution
};

}  // namespace idsec
