#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "idsec/model.hpp"

namespace idsec {

/// Inputs of a degree-distribution sweep. Field names double as the keys of
/// the flat `key = value` config file; defaults reproduce the reference
/// parameter set (power-law infection with exponent 1.5, loss 10, power
/// exposure 30 z^1.1, direct attack probability 0.7, investments in
/// [0, 1000], 20 degrees).
struct ExperimentConfig {
  std::vector<double> alpha_grid;  // defaults to 0.5, 0.75, ..., 3.0
  double zeta = 1.5;               // infection decay exponent
  double loss = 10.0;
  double exposure_coef = 30.0;  // 0 selects the decoupled stub (no exposure)
  double exposure_b = 1.1;
  double tau_a = 0.7;
  double beta_ia = 1.0;
  double i_min = 0.0;
  double i_max = 1000.0;
  std::size_t d_max = 20;
  double tolerance = 1e-12;
  std::string output_path = "sweep.csv";

  ExperimentConfig();
};

/// Parses a config file of `key = value` lines; '#' starts a comment.
/// Unknown keys and malformed values are rejected with the line number.
ExperimentConfig load_config(const std::string& path);

/// Applies one key = value assignment; shared by the file parser and CLI
/// overrides. alpha_grid takes a comma-separated list.
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

InfectionModel make_infection(const ExperimentConfig& config);
ExposureModel make_exposure(const ExperimentConfig& config);
GameParams make_params(const ExperimentConfig& config);
Game make_game(const ExperimentConfig& config, PopulationVector census);

/// One sweep output row: equilibrium and optimum summaries at one alpha.
struct SweepRow {
  double alpha = 0.0;
  double e_ne = 0.0;
  double e_so = 0.0;
  double cost_ne = 0.0;
  double cost_so = 0.0;
  double poa = 0.0;
  double rho_ne = 0.0;
  double rho_so = 0.0;
};

/// Solves NE and social optimum for the power-law census at every alpha of
/// the grid; rows come out in ascending alpha order whatever the grid order.
/// Deterministic. The row invariants poa >= 1 and e_so <= e_ne (both with
/// 1e-9 slack) are asserted at emission; solver failures abort with the
/// offending alpha in the message.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

/// CSV serialization: pinned header
/// `alpha,e_ne,e_so,cost_ne,cost_so,poa,rho_ne,rho_so`, one row per alpha,
/// 17 significant digits, LF line endings. Byte-identical across reruns of
/// the same config on one platform.
std::string to_csv(const std::vector<SweepRow>& rows);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Reads a census from CSV with header `degree,mass`. Degrees may appear in
/// any order but at most once; gaps get zero mass.
PopulationVector read_census_csv(const std::string& path);

/// Renders a double with 17 significant digits (round-trip exact). Finite
/// values always carry a decimal point or exponent so they read back as
/// reals.
std::string format_double(double value);

}  // namespace idsec
