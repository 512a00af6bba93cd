#include "idsec/model.hpp"

#include <cmath>
#include <utility>

namespace idsec {

namespace {

constexpr double kNormalizationTolerance = 1e-12;

void check_positive_finite(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0)
    throw InvalidParameterError(std::string(name) + " must be positive and finite");
}

}  // namespace

PopulationVector::PopulationVector(std::vector<double> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty()) throw DegenerateCensusError("census is empty");
  double total = 0.0;
  for (double m : masses_) {
    if (!std::isfinite(m) || m < 0.0)
      throw InvalidParameterError("census masses must be finite and nonnegative");
    total += m;
  }
  if (total <= 0.0) throw DegenerateCensusError("census carries no positive mass");
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    for (double& m : masses_) m /= total;
  }
}

double PopulationVector::mass(std::size_t degree) const {
  if (degree < 1 || degree > masses_.size())
    throw InvalidParameterError("degree out of range");
  return masses_[degree - 1];
}

PopulationVector normalize(std::vector<double> masses) {
  return PopulationVector(std::move(masses));
}

std::vector<double> degree_fraction(const PopulationVector& census) {
  const auto& m = census.masses();
  double total = 0.0;
  for (double x : m) total += x;
  std::vector<double> f(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) f[i] = m[i] / total;
  return f;
}

std::vector<double> weighted_fraction(const PopulationVector& census) {
  const auto& m = census.masses();
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) total += static_cast<double>(i + 1) * m[i];
  std::vector<double> w(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    w[i] = static_cast<double>(i + 1) * m[i] / total;
  return w;
}

double avg_degree(const PopulationVector& census) {
  const auto& m = census.masses();
  double mass = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    mass += m[i];
    weighted += static_cast<double>(i + 1) * m[i];
  }
  return weighted / mass;
}

PopulationVector power_law_census(double alpha, std::size_t d_max) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw InvalidParameterError("power-law alpha must be nonnegative and finite");
  if (d_max < 1) throw InvalidParameterError("d_max must be at least 1");
  std::vector<double> masses(d_max);
  for (std::size_t d = 1; d <= d_max; ++d)
    masses[d - 1] = std::pow(static_cast<double>(d), -alpha);
  return PopulationVector(std::move(masses));
}

InfectionModel InfectionModel::power_law(double exponent, double loss) {
  check_positive_finite(exponent, "infection exponent");
  check_positive_finite(loss, "loss");
  InfectionModel m;
  m.power_ = true;
  m.exponent_ = exponent;
  m.loss_ = loss;
  return m;
}

InfectionModel InfectionModel::custom(std::function<double(double)> p,
                                      std::function<double(double)> dp, double loss) {
  if (!p || !dp) throw InvalidParameterError("custom infection model needs p and dp");
  check_positive_finite(loss, "loss");
  InfectionModel m;
  m.power_ = false;
  m.loss_ = loss;
  m.p_ = std::move(p);
  m.dp_ = std::move(dp);
  return m;
}

double InfectionModel::p(double a) const {
  return power_ ? std::pow(1.0 + a, -exponent_) : p_(a);
}

double InfectionModel::dp(double a) const {
  return power_ ? -exponent_ * std::pow(1.0 + a, -exponent_ - 1.0) : dp_(a);
}

double InfectionModel::exponent() const {
  if (!power_) throw InvalidParameterError("custom infection model has no exponent");
  return exponent_;
}

void check_infection_shape(const InfectionModel& infection, const GameParams& params) {
  if (infection.is_power_law()) return;  // strictly decreasing and convex by construction
  constexpr int kGridPoints = 100;
  const double lo = params.invest_min, hi = params.invest_max;
  double v[kGridPoints];
  for (int i = 0; i < kGridPoints; ++i) {
    double a = lo + (hi - lo) * i / (kGridPoints - 1);
    double pa = infection.p(a);
    if (!std::isfinite(pa) || pa < -1e-12 || pa > 1.0 + 1e-12)
      throw InvalidParameterError("custom infection probability leaves [0, 1]");
    v[i] = pa;
  }
  for (int i = 0; i + 1 < kGridPoints; ++i)
    if (!(v[i + 1] < v[i]))
      throw InvalidParameterError("custom infection probability is not strictly decreasing");
  for (int i = 0; i + 2 < kGridPoints; ++i)
    if (!(v[i] + v[i + 2] - 2.0 * v[i + 1] > 0.0))
      throw InvalidParameterError("custom infection probability is not strictly convex");
}

ExposureModel ExposureModel::power(double coef, double exponent) {
  check_positive_finite(coef, "exposure coefficient");
  check_positive_finite(exponent, "exposure exponent");
  ExposureModel m;
  m.kind_ = Kind::power;
  m.coef_ = coef;
  m.exponent_ = exponent;
  return m;
}

ExposureModel ExposureModel::log_shape(double coef) {
  check_positive_finite(coef, "exposure coefficient");
  ExposureModel m;
  m.kind_ = Kind::log;
  m.coef_ = coef;
  return m;
}

ExposureModel ExposureModel::custom(std::function<double(double)> gplus,
                                    std::function<double(double)> dgplus) {
  if (!gplus || !dgplus)
    throw InvalidParameterError("custom exposure model needs gplus and dgplus");
  ExposureModel m;
  m.kind_ = Kind::custom;
  m.gplus_ = std::move(gplus);
  m.dgplus_ = std::move(dgplus);
  return m;
}

double ExposureModel::gplus(double z) const {
  switch (kind_) {
    case Kind::power:
      return coef_ * std::pow(z, exponent_);
    case Kind::log:
      return coef_ * std::log1p(z);
    case Kind::custom:
      return gplus_(z);
  }
  return 0.0;
}

double ExposureModel::dgplus(double z) const {
  switch (kind_) {
    case Kind::power:
      return coef_ * exponent_ * std::pow(z, exponent_ - 1.0);
    case Kind::log:
      return coef_ / (1.0 + z);
    case Kind::custom:
      return dgplus_(z);
  }
  return 0.0;
}

double ExposureModel::coef() const {
  if (kind_ == Kind::custom)
    throw InvalidParameterError("custom exposure model has no coefficient");
  return coef_;
}

double ExposureModel::exponent() const {
  if (kind_ != Kind::power)
    throw InvalidParameterError("only power exposure models have an exponent");
  return exponent_;
}

void validate(const GameParams& params) {
  if (!std::isfinite(params.direct_attack_prob) || params.direct_attack_prob < 0.0 ||
      params.direct_attack_prob > 1.0)
    throw InvalidParameterError("direct_attack_prob must lie in [0, 1]");
  if (!std::isfinite(params.indirect_attack_prob) || params.indirect_attack_prob <= 0.0 ||
      params.indirect_attack_prob > 1.0)
    throw InvalidParameterError("indirect_attack_prob must lie in (0, 1]");
  if (!std::isfinite(params.invest_min) || !std::isfinite(params.invest_max) ||
      params.invest_min < 0.0 || !(params.invest_min < params.invest_max))
    throw InvalidParameterError("investment bounds must satisfy 0 <= invest_min < invest_max");
}

Game::Game(PopulationVector census_, InfectionModel infection_, ExposureModel exposure_,
           GameParams params_)
    : census(std::move(census_)),
      infection(std::move(infection_)),
      exposure(std::move(exposure_)),
      params(params_) {
  validate(params);
}

}  // namespace idsec
