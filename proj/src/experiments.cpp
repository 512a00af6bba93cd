#include "idsec/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>

#include "idsec/equilibrium.hpp"
#include "idsec/social.hpp"

namespace idsec {

namespace {

std::string trim(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  double parsed = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(parsed))
    throw InvalidParameterError(key + ": expected a finite real, got '" + value + "'");
  return parsed;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  double parsed = parse_real(key, value);
  if (parsed < 1.0 || parsed != std::floor(parsed) || parsed > 1e6)
    throw InvalidParameterError(key + ": expected an integer in [1, 1000000], got '" +
                                value + "'");
  return static_cast<std::size_t>(parsed);
}

std::vector<double> parse_grid(const std::string& key, const std::string& value) {
  std::vector<double> grid;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t comma = value.find(',', pos);
    std::string item = trim(comma == std::string::npos ? value.substr(pos)
                                                       : value.substr(pos, comma - pos));
    if (item.empty())
      throw InvalidParameterError(key + ": empty entry in '" + value + "'");
    double alpha = parse_real(key, item);
    if (alpha < 0.0)
      throw InvalidParameterError(key + ": entries must be nonnegative, got '" + item + "'");
    grid.push_back(alpha);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (grid.empty()) throw InvalidParameterError(key + ": grid must be nonempty");
  return grid;
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
  for (int i = 0; i <= 10; ++i) alpha_grid.push_back(0.5 + 0.25 * i);
}

void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "alpha_grid") {
    config.alpha_grid = parse_grid(key, value);
  } else if (key == "zeta") {
    config.zeta = parse_real(key, value);
  } else if (key == "loss") {
    config.loss = parse_real(key, value);
  } else if (key == "exposure_coef") {
    config.exposure_coef = parse_real(key, value);
  } else if (key == "exposure_b") {
    config.exposure_b = parse_real(key, value);
  } else if (key == "tau_a") {
    config.tau_a = parse_real(key, value);
  } else if (key == "beta_ia") {
    config.beta_ia = parse_real(key, value);
  } else if (key == "i_min") {
    config.i_min = parse_real(key, value);
  } else if (key == "i_max") {
    config.i_max = parse_real(key, value);
  } else if (key == "d_max") {
    config.d_max = parse_count(key, value);
  } else if (key == "tolerance") {
    config.tolerance = parse_real(key, value);
  } else if (key == "output_path") {
    if (value.empty()) throw InvalidParameterError("output_path: empty value");
    config.output_path = value;
  } else {
    throw InvalidParameterError("unknown config key '" + key + "'");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string text = trim(line);
    if (text.empty()) continue;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw InvalidParameterError(path + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw InvalidParameterError(path + ":" + std::to_string(line_no) + ": missing key");
    try {
      apply_config_entry(config, key, value);
    } catch (const InputError& error) {
      throw InvalidParameterError(path + ":" + std::to_string(line_no) + ": " +
                                  error.what());
    }
  }
  return config;
}

InfectionModel make_infection(const ExperimentConfig& config) {
  return InfectionModel::power_law(config.zeta, config.loss);
}

ExposureModel make_exposure(const ExperimentConfig& config) {
  if (config.exposure_coef == 0.0) {
    // decoupled stub: agents face no indirect exposure at all
    return ExposureModel::custom([](double) { return 0.0; }, [](double) { return 0.0; });
  }
  return ExposureModel::power(config.exposure_coef, config.exposure_b);
}

GameParams make_params(const ExperimentConfig& config) {
  GameParams params;
  params.direct_attack_prob = config.tau_a;
  params.indirect_attack_prob = config.beta_ia;
  params.invest_min = config.i_min;
  params.invest_max = config.i_max;
  return params;
}

Game make_game(const ExperimentConfig& config, PopulationVector census) {
  return Game(std::move(census), make_infection(config), make_exposure(config),
              make_params(config));
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  if (config.alpha_grid.empty())
    throw InvalidParameterError("alpha_grid must be nonempty");
  std::vector<double> grid = config.alpha_grid;
  std::sort(grid.begin(), grid.end());
  FixedPointSettings settings;
  settings.rho_tolerance = config.tolerance;

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double alpha : grid) {
    try {
      Game game = make_game(config, power_law_census(alpha, config.d_max));
      EquilibriumResult ne = solve_ne(game, settings);
      EquilibriumResult so = solve_social_optimum(game, settings);
      SweepRow row;
      row.alpha = alpha;
      row.e_ne = ne.exposure;
      row.e_so = so.exposure;
      row.cost_ne = ne.social_cost;
      row.cost_so = so.social_cost;
      row.poa = ne.social_cost / so.social_cost;
      row.rho_ne = ne.vulnerability;
      row.rho_so = so.vulnerability;
      if (!(row.poa >= 1.0 - 1e-9))
        throw SolverDivergedError("row invariant poa >= 1 violated");
      if (!(row.e_so <= row.e_ne + 1e-9))
        throw SolverDivergedError("row invariant e_so <= e_ne violated");
      rows.push_back(row);
    } catch (const SolverError& error) {
      throw SolverDivergedError("sweep failed at alpha = " + format_double(alpha) + ": " +
                                error.what());
    }
  }
  return rows;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  std::string text = buffer;
  if (std::isfinite(value) && text.find_first_of(".eE") == std::string::npos)
    text += ".0";
  return text;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "alpha,e_ne,e_so,cost_ne,cost_so,poa,rho_ne,rho_so\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.alpha);
    out += ',';
    out += format_double(row.e_ne);
    out += ',';
    out += format_double(row.e_so);
    out += ',';
    out += format_double(row.cost_ne);
    out += ',';
    out += format_double(row.cost_so);
    out += ',';
    out += format_double(row.poa);
    out += ',';
    out += format_double(row.rho_ne);
    out += ',';
    out += format_double(row.rho_so);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path);
  out << to_csv(rows);
  out.flush();
  if (!out) throw InputError("failed writing output file: " + path);
}

PopulationVector read_census_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open census file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw InvalidParameterError(path + ": empty census file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (trim(line) != "degree,mass")
    throw InvalidParameterError(path + ": expected header 'degree,mass'");

  std::map<std::size_t, double> masses;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line);
    if (text.empty()) continue;
    std::size_t comma = text.find(',');
    std::string where = path + ":" + std::to_string(line_no);
    if (comma == std::string::npos)
      throw InvalidParameterError(where + ": expected 'degree,mass'");
    try {
      std::size_t degree = parse_count("degree", trim(text.substr(0, comma)));
      double mass = parse_real("mass", trim(text.substr(comma + 1)));
      if (!masses.emplace(degree, mass).second)
        throw InvalidParameterError("duplicate degree " + std::to_string(degree));
    } catch (const InputError& error) {
      throw InvalidParameterError(where + ": " + error.what());
    }
  }
  if (masses.empty())
    throw DegenerateCensusError(path + ": census has no rows");

  std::vector<double> dense(masses.rbegin()->first, 0.0);
  for (const auto& [degree, mass] : masses) dense[degree - 1] = mass;
  try {
    return PopulationVector(std::move(dense));
  } catch (const InputError& error) {
    throw InvalidParameterError(path + ": " + std::string(error.what()));
  }
}

}  // namespace idsec
