#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "idsec/equilibrium.hpp"
#include "idsec/model.hpp"

namespace idsec {

/// Outcome of a stochastic-ordering test between two censuses.
struct DominanceVerdict {
  bool holds = false;
  bool strict_somewhere = false;  // meaningful only when holds
  std::optional<std::size_t> first_violation_degree;
};

/// First-order stochastic dominance between the weighted degree
/// distributions: holds when every prefix sum of w(s1) is at most the
/// matching prefix sum of w(s2), making w(s1) the stochastically larger
/// distribution. Equilibrium exposure and investments then order the same
/// way: e(s1) <= e(s2) and a(s1) <= a(s2) elementwise. Comparisons carry a
/// 1e-12 slack.
DominanceVerdict fosd_weighted(const PopulationVector& s1, const PopulationVector& s2);

/// Likelihood-ratio condition: s2_d / s1_d nonincreasing in d, a sufficient
/// condition for fosd_weighted(s1, s2). Degrees with zero mass on both sides
/// are skipped; zero mass in s1 against positive mass in s2 reads as an
/// infinite ratio, admissible only before every finite ratio. Implemented by
/// cross multiplication, so no division is involved.
DominanceVerdict likelihood_ratio_condition(const PopulationVector& s1,
                                            const PopulationVector& s2);

/// Prefix-sum comparison underlying the likelihood-ratio proof: for
/// nonnegative sequences, checks sum(b_1..k) / sum(a_1..k) >= sum(b) / sum(a)
/// for every k (by cross multiplication, 1e-12 relative slack). When
/// b_l / a_l is nonincreasing the comparison always holds. Sequences must
/// have equal length of at least two; a zero prefix sum of a_seq is rejected.
bool prefix_ratio_check(std::span<const double> a_seq, std::span<const double> b_seq);

/// One consecutive census pair inside a monotonicity sweep.
struct MonotonicityPair {
  std::size_t index = 0;  // position of the first census of the pair
  DominanceVerdict dominance;
  bool checked = false;  // orderings below are asserted only when dominance holds
  double e_ne_first = 0.0, e_ne_second = 0.0;
  double e_so_first = 0.0, e_so_second = 0.0;
  bool exposure_ne_ordered = false;
  bool exposure_so_ordered = false;
  bool investments_ordered = false;
  bool holds = false;  // all three orderings, when checked
};

struct MonotonicityReport {
  std::vector<MonotonicityPair> pairs;
  bool all_checked_hold = true;
};

/// Solves NE and social optimum for every census of a family and checks the
/// dominance-monotonicity predictions on each consecutive pair that is
/// actually ordered under fosd_weighted; unordered pairs are reported as
/// unchecked rather than failed. Censuses must share a common max degree.
MonotonicityReport monotonicity_sweep(const std::vector<PopulationVector>& family,
                                      const InfectionModel& infection,
                                      const ExposureModel& exposure,
                                      const GameParams& params,
                                      const FixedPointSettings& settings = {});

}  // namespace idsec
