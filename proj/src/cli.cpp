#include "idsec/cli.hpp"

#include <cstddef>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "idsec/dominance.hpp"
#include "idsec/equilibrium.hpp"
#include "idsec/experiments.hpp"
#include "idsec/social.hpp"

namespace idsec {

namespace {

using ordered_json = nlohmann::ordered_json;

// One per subcommand: flag storage plus the option handles needed to tell an
// explicit flag from its default (sweep folds flags over the config file).
struct FlagSet {
  double alpha = 1.5;
  double zeta = 1.5;
  double b = 1.1;
  double coef = 30.0;
  std::size_t dmax = 20;
  double tau_a = 0.7;
  double beta_ia = 1.0;
  double loss = 10.0;
  double imin = 0.0;
  double imax = 1000.0;
  double tol = 1e-12;
  std::string census_path;
  std::string out_path;
  std::string format = "csv";
  std::string config_path;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* zeta_opt = nullptr;
  CLI::Option* b_opt = nullptr;
  CLI::Option* coef_opt = nullptr;
  CLI::Option* dmax_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* loss_opt = nullptr;
  CLI::Option* imin_opt = nullptr;
  CLI::Option* imax_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* config_opt = nullptr;
};

void add_model_flags(CLI::App* cmd, FlagSet& f) {
  f.alpha_opt =
      cmd->add_option("--alpha", f.alpha, "power-law census exponent (default 1.5)");
  f.zeta_opt = cmd->add_option("--zeta", f.zeta, "infection decay exponent");
  f.b_opt = cmd->add_option("--b", f.b, "exposure power exponent");
  f.coef_opt =
      cmd->add_option("--coef", f.coef, "exposure coefficient; 0 disables exposure");
  f.dmax_opt = cmd->add_option("--dmax", f.dmax, "maximum degree of the power-law census");
  f.tau_opt = cmd->add_option("--tau-a", f.tau_a, "direct attack probability");
  f.beta_opt = cmd->add_option("--beta-ia", f.beta_ia, "per-edge transmission probability");
  f.loss_opt = cmd->add_option("--loss", f.loss, "expected loss per infection");
  f.imin_opt = cmd->add_option("--imin", f.imin, "investment lower bound");
  f.imax_opt = cmd->add_option("--imax", f.imax, "investment upper bound");
  f.tol_opt = cmd->add_option("--tol", f.tol, "fixed-point tolerance");
  cmd->add_option("--census", f.census_path,
                  "census CSV (degree,mass); overrides --alpha/--dmax");
  cmd->add_option("--out", f.out_path, "write output to this path instead of stdout");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig build_config(const FlagSet& f, const ExperimentConfig* base) {
  ExperimentConfig config = base ? *base : ExperimentConfig();
  if (f.alpha_opt->count()) config.alpha_grid = {f.alpha};
  if (f.zeta_opt->count()) config.zeta = f.zeta;
  if (f.b_opt->count()) config.exposure_b = f.b;
  if (f.coef_opt->count()) config.exposure_coef = f.coef;
  if (f.dmax_opt->count()) config.d_max = f.dmax;
  if (f.tau_opt->count()) config.tau_a = f.tau_a;
  if (f.beta_opt->count()) config.beta_ia = f.beta_ia;
  if (f.loss_opt->count()) config.loss = f.loss;
  if (f.imin_opt->count()) config.i_min = f.imin;
  if (f.imax_opt->count()) config.i_max = f.imax;
  if (f.tol_opt->count()) config.tolerance = f.tol;
  return config;
}

PopulationVector pick_census(const FlagSet& f, const ExperimentConfig& config) {
  if (!f.census_path.empty()) return read_census_csv(f.census_path);
  return power_law_census(f.alpha, config.d_max);
}

FixedPointSettings pick_settings(const ExperimentConfig& config) {
  FixedPointSettings settings;
  settings.rho_tolerance = config.tolerance;
  return settings;
}

void emit(const std::string& text, const FlagSet& f, std::ostream& out) {
  if (f.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file) throw InputError("cannot open output file: " + f.out_path);
  file << text;
  file.flush();
  if (!file) throw InputError("failed writing output file: " + f.out_path);
}

std::string render_equilibrium_csv(const Game& game, const EquilibriumResult& result) {
  std::string out;
  out += "# rho," + format_double(result.vulnerability) + "\n";
  out += "# exposure," + format_double(result.exposure) + "\n";
  out += "# social_cost," + format_double(result.social_cost) + "\n";
  out += "# iterations," + std::to_string(result.iterations) + "\n";
  out += "# residual," + format_double(result.residual) + "\n";
  out += "degree,investment,infection_prob,agent_cost\n";
  for (std::size_t i = 0; i < result.profile.size(); ++i) {
    double a = result.profile.investments[i];
    out += std::to_string(i + 1) + ',' + format_double(a) + ',' +
           format_double(game.infection.p(a)) + ',' +
           format_double(result.per_degree_cost[i]) + '\n';
  }
  return out;
}

std::string render_equilibrium_json(const Game& game, const EquilibriumResult& result) {
  ordered_json root;
  root["rho"] = result.vulnerability;
  root["exposure"] = result.exposure;
  root["social_cost"] = result.social_cost;
  root["iterations"] = result.iterations;
  root["residual"] = result.residual;
  ordered_json profile = ordered_json::array();
  for (std::size_t i = 0; i < result.profile.size(); ++i) {
    double a = result.profile.investments[i];
    profile.push_back({{"degree", i + 1},
                       {"investment", a},
                       {"infection_prob", game.infection.p(a)},
                       {"agent_cost", result.per_degree_cost[i]}});
  }
  root["profile"] = std::move(profile);
  return root.dump(2) + "\n";
}

ordered_json verdict_json(const DominanceVerdict& verdict) {
  ordered_json node;
  node["holds"] = verdict.holds;
  node["strict_somewhere"] = verdict.strict_somewhere;
  if (verdict.first_violation_degree)
    node["first_violation_degree"] = *verdict.first_violation_degree;
  else
    node["first_violation_degree"] = nullptr;
  return node;
}

std::string verdict_csv_row(const std::string& test, const std::string& direction,
                            const DominanceVerdict& verdict) {
  std::string row = test + ',' + direction + ',';
  row += verdict.holds ? "true" : "false";
  row += ',';
  if (verdict.holds) row += verdict.strict_somewhere ? "true" : "false";
  row += ',';
  if (verdict.first_violation_degree)
    row += std::to_string(*verdict.first_violation_degree);
  row += '\n';
  return row;
}

int run_equilibrium(const FlagSet& f, bool social, std::ostream& out) {
  ExperimentConfig config = build_config(f, nullptr);
  Game game = make_game(config, pick_census(f, config));
  FixedPointSettings settings = pick_settings(config);
  EquilibriumResult result =
      social ? solve_social_optimum(game, settings) : solve_ne(game, settings);
  emit(f.format == "json" ? render_equilibrium_json(game, result)
                          : render_equilibrium_csv(game, result),
       f, out);
  return 0;
}

int run_poa(const FlagSet& f, std::ostream& out) {
  ExperimentConfig config = build_config(f, nullptr);
  Game game = make_game(config, pick_census(f, config));
  FixedPointSettings settings = pick_settings(config);
  EquilibriumResult ne = solve_ne(game, settings);
  EquilibriumResult so = solve_social_optimum(game, settings);
  if (!(so.social_cost > 0.0))
    throw InvalidParameterError("social cost is not positive; ratio undefined");
  double ratio = ne.social_cost / so.social_cost;
  if (f.format == "json") {
    ordered_json root;
    root["poa"] = ratio;
    root["cost_ne"] = ne.social_cost;
    root["cost_so"] = so.social_cost;
    emit(root.dump(2) + "\n", f, out);
  } else {
    emit(format_double(ratio) + "\n", f, out);
  }
  return 0;
}

int run_penalty(const FlagSet& f, std::ostream& out) {
  ExperimentConfig config = build_config(f, nullptr);
  Game game = make_game(config, pick_census(f, config));
  PenaltySchedule schedule = penalty_schedule(game, pick_settings(config));
  if (f.format == "json") {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < schedule.penalties.size(); ++i) {
      rows.push_back({{"degree", i + 1},
                      {"penalty", schedule.penalties[i]},
                      {"indirect_loss", schedule.indirect_losses[i]}});
    }
    ordered_json root;
    root["schedule"] = std::move(rows);
    emit(root.dump(2) + "\n", f, out);
  } else {
    std::string text = "degree,penalty,indirect_loss\n";
    for (std::size_t i = 0; i < schedule.penalties.size(); ++i) {
      text += std::to_string(i + 1) + ',' + format_double(schedule.penalties[i]) + ',' +
              format_double(schedule.indirect_losses[i]) + '\n';
    }
    emit(text, f, out);
  }
  return 0;
}

int run_sweep_command(const FlagSet& f) {
  ExperimentConfig base;
  if (f.config_opt->count()) base = load_config(f.config_path);
  ExperimentConfig config = build_config(f, &base);
  std::vector<SweepRow> rows = run_sweep(config);
  std::string path = f.out_path.empty() ? config.output_path : f.out_path;
  if (f.format == "json") {
    ordered_json list = ordered_json::array();
    for (const SweepRow& row : rows) {
      list.push_back({{"alpha", row.alpha},
                      {"e_ne", row.e_ne},
                      {"e_so", row.e_so},
                      {"cost_ne", row.cost_ne},
                      {"cost_so", row.cost_so},
                      {"poa", row.poa},
                      {"rho_ne", row.rho_ne},
                      {"rho_so", row.rho_so}});
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open output file: " + path);
    file << list.dump(2) << "\n";
    file.flush();
    if (!file) throw InputError("failed writing output file: " + path);
  } else {
    write_csv(rows, path);
  }
  return 0;
}

int run_check_dominance(const std::string& first_path, const std::string& second_path,
                        const FlagSet& f, std::ostream& out) {
  PopulationVector s1 = read_census_csv(first_path);
  PopulationVector s2 = read_census_csv(second_path);
  DominanceVerdict weighted_fwd = fosd_weighted(s1, s2);
  DominanceVerdict weighted_rev = fosd_weighted(s2, s1);
  DominanceVerdict ratio_fwd = likelihood_ratio_condition(s1, s2);
  DominanceVerdict ratio_rev = likelihood_ratio_condition(s2, s1);
  if (f.format == "json") {
    ordered_json root;
    root["weighted_dominance"] = {{"first_over_second", verdict_json(weighted_fwd)},
                                  {"second_over_first", verdict_json(weighted_rev)}};
    root["likelihood_ratio"] = {{"first_over_second", verdict_json(ratio_fwd)},
                                {"second_over_first", verdict_json(ratio_rev)}};
    emit(root.dump(2) + "\n", f, out);
  } else {
    std::string text = "test,direction,holds,strict,first_violation_degree\n";
    text += verdict_csv_row("weighted_dominance", "first_over_second", weighted_fwd);
    text += verdict_csv_row("weighted_dominance", "second_over_first", weighted_rev);
    text += verdict_csv_row("likelihood_ratio", "first_over_second", ratio_fwd);
    text += verdict_csv_row("likelihood_ratio", "second_over_first", ratio_rev);
    emit(text, f, out);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"interdependent-security population games: equilibria, optima, sweeps",
               "idsec"};
  app.require_subcommand(1);

  FlagSet ne_flags, so_flags, poa_flags, penalty_flags, sweep_flags, dom_flags;
  std::string census_first, census_second;

  CLI::App* ne_cmd = app.add_subcommand("ne", "solve the Nash equilibrium");
  add_model_flags(ne_cmd, ne_flags);
  CLI::App* so_cmd = app.add_subcommand("so", "solve the social optimum");
  add_model_flags(so_cmd, so_flags);
  CLI::App* poa_cmd = app.add_subcommand("poa", "price of anarchy (NE over optimum cost)");
  add_model_flags(poa_cmd, poa_flags);
  CLI::App* penalty_cmd =
      app.add_subcommand("penalty", "per-degree penalty schedule at the social optimum");
  add_model_flags(penalty_cmd, penalty_flags);
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a census sweep and write plot data");
  add_model_flags(sweep_cmd, sweep_flags);
  sweep_flags.config_opt =
      sweep_cmd->add_option("--config", sweep_flags.config_path, "key = value config file");
  CLI::App* dom_cmd = app.add_subcommand(
      "check-dominance", "compare two censuses under the stochastic-order tests");
  dom_cmd->add_option("first", census_first, "census CSV (degree,mass)")->required();
  dom_cmd->add_option("second", census_second, "census CSV (degree,mass)")->required();
  dom_cmd->add_option("--out", dom_flags.out_path,
                      "write output to this path instead of stdout");
  dom_cmd->add_option("--format", dom_flags.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& error) {
    int code = app.exit(error, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(ne_cmd)) return run_equilibrium(ne_flags, false, out);
    if (app.got_subcommand(so_cmd)) return run_equilibrium(so_flags, true, out);
    if (app.got_subcommand(poa_cmd)) return run_poa(poa_flags, out);
    if (app.got_subcommand(penalty_cmd)) return run_penalty(penalty_flags, out);
    if (app.got_subcommand(sweep_cmd)) return run_sweep_command(sweep_flags);
    if (app.got_subcommand(dom_cmd))
      return run_check_dominance(census_first, census_second, dom_flags, out);
  } catch (const InputError& error) {
    err << "error: " << error.what() << "\n";
    return 1;
  } catch (const SolverError& error) {
    err << "error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    err << "internal error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace idsec
