#include "idsec/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "idsec/social.hpp"

namespace idsec {

namespace {

// Absorbs normalization rounding in prefix-sum and ratio comparisons.
constexpr double kSlack = 1e-12;

std::vector<double> weighted_prefix(const PopulationVector& census) {
  auto w = weighted_fraction(census);
  for (std::size_t i = 1; i < w.size(); ++i) w[i] += w[i - 1];
  return w;
}

void require_same_degree(const PopulationVector& s1, const PopulationVector& s2) {
  if (s1.max_degree() != s2.max_degree())
    throw DimensionMismatchError("censuses must share a common max degree");
}

}  // namespace

DominanceVerdict fosd_weighted(const PopulationVector& s1, const PopulationVector& s2) {
  require_same_degree(s1, s2);
  auto c1 = weighted_prefix(s1);
  auto c2 = weighted_prefix(s2);
  DominanceVerdict verdict;
  verdict.holds = true;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1[i] > c2[i] + kSlack) {
      verdict.holds = false;
      verdict.strict_somewhere = false;
      verdict.first_violation_degree = i + 1;
      return verdict;
    }
    if (c1[i] < c2[i] - kSlack) verdict.strict_somewhere = true;
  }
  return verdict;
}

DominanceVerdict likelihood_ratio_condition(const PopulationVector& s1,
                                            const PopulationVector& s2) {
  require_same_degree(s1, s2);
  const auto& m1 = s1.masses();
  const auto& m2 = s2.masses();
  DominanceVerdict verdict;
  verdict.holds = true;
  // Degrees with zero mass on both sides drop out of the ratio chain. An
  // infinite ratio (zero s1 mass against positive s2 mass) compares larger
  // than anything through the cross products, so it is admissible exactly
  // when nothing finite precedes it.
  std::size_t prev = m1.size();
  for (std::size_t i = 0; i < m1.size(); ++i) {
    if (m1[i] == 0.0 && m2[i] == 0.0) continue;
    if (prev != m1.size()) {
      double lhs = m2[prev] * m1[i];
      double rhs = m2[i] * m1[prev];
      if (lhs + kSlack < rhs) {
        verdict.holds = false;
        verdict.strict_somewhere = false;
        verdict.first_violation_degree = prev + 1;
        return verdict;
      }
      if (lhs > rhs + kSlack) verdict.strict_somewhere = true;
    }
    prev = i;
  }
  return verdict;
}

bool prefix_ratio_check(std::span<const double> a_seq, std::span<const double> b_seq) {
  if (a_seq.size() != b_seq.size() || a_seq.size() < 2)
    throw DimensionMismatchError("sequences must have equal length of at least two");
  for (std::size_t i = 0; i < a_seq.size(); ++i) {
    if (!std::isfinite(a_seq[i]) || a_seq[i] < 0.0 || !std::isfinite(b_seq[i]) ||
        b_seq[i] < 0.0)
      throw InvalidParameterError("sequences must be nonnegative and finite");
  }
  const double total_a = std::accumulate(a_seq.begin(), a_seq.end(), 0.0);
  const double total_b = std::accumulate(b_seq.begin(), b_seq.end(), 0.0);
  double prefix_a = 0.0, prefix_b = 0.0;
  for (std::size_t k = 0; k < a_seq.size(); ++k) {
    prefix_a += a_seq[k];
    prefix_b += b_seq[k];
    if (prefix_a == 0.0)
      throw InvalidParameterError("zero prefix sum in the denominator sequence");
    double lhs = prefix_b * total_a;
    double rhs = total_b * prefix_a;
    if (lhs < rhs - kSlack * std::max(lhs, rhs)) return false;
  }
  return true;
}

MonotonicityReport monotonicity_sweep(const std::vector<PopulationVector>& family,
                                      const InfectionModel& infection,
                                      const ExposureModel& exposure,
                                      const GameParams& params,
                                      const FixedPointSettings& settings) {
  MonotonicityReport report;
  if (family.size() < 2) return report;
  constexpr double kOrderSlack = 1e-9;

  std::vector<EquilibriumResult> ne, so;
  ne.reserve(family.size());
  so.reserve(family.size());
  for (const auto& census : family) {
    Game game(census, infection, exposure, params);
    ne.push_back(solve_ne(game, settings));
    so.push_back(solve_social_optimum(game, settings));
  }

  for (std::size_t i = 0; i + 1 < family.size(); ++i) {
    MonotonicityPair pair;
    pair.index = i;
    pair.dominance = fosd_weighted(family[i], family[i + 1]);
    pair.e_ne_first = ne[i].exposure;
    pair.e_ne_second = ne[i + 1].exposure;
    pair.e_so_first = so[i].exposure;
    pair.e_so_second = so[i + 1].exposure;
    if (pair.dominance.holds) {
      pair.checked = true;
      pair.exposure_ne_ordered = pair.e_ne_first <= pair.e_ne_second + kOrderSlack;
      pair.exposure_so_ordered = pair.e_so_first <= pair.e_so_second + kOrderSlack;
      pair.investments_ordered = true;
      const auto& a1 = ne[i].profile.investments;
      const auto& a2 = ne[i + 1].profile.investments;
      for (std::size_t d = 0; d < a1.size(); ++d) {
        if (a1[d] > a2[d] + kOrderSlack) {
          pair.investments_ordered = false;
          break;
        }
      }
      pair.holds = pair.exposure_ne_ordered && pair.exposure_so_ordered &&
                   pair.investments_ordered;
      if (!pair.holds) report.all_checked_hold = false;
    }
    report.pairs.push_back(std::move(pair));
  }
  return report;
}

}  // namespace idsec
