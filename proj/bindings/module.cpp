#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "idsec/dominance.hpp"
#include "idsec/equilibrium.hpp"
#include "idsec/experiments.hpp"
#include "idsec/response.hpp"
#include "idsec/social.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_idsec, m) {
  m.doc() = "solvers for interdependent-security population games";

  py::register_exception<idsec::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<idsec::SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<idsec::PopulationVector>(m, "PopulationVector")
      .def(py::init<std::vector<double>>(), py::arg("masses"))
      .def_property_readonly("max_degree", &idsec::PopulationVector::max_degree)
      .def_property_readonly(
          "masses", [](const idsec::PopulationVector& s) { return s.masses(); })
      .def("mass", &idsec::PopulationVector::mass, py::arg("degree"));
  py::implicitly_convertible<py::list, idsec::PopulationVector>();

  m.def("normalize", &idsec::normalize, py::arg("masses"));
  m.def("degree_fraction", &idsec::degree_fraction, py::arg("census"));
  m.def("weighted_fraction", &idsec::weighted_fraction, py::arg("census"));
  m.def("avg_degree", &idsec::avg_degree, py::arg("census"));
  m.def("power_law_census", &idsec::power_law_census, py::arg("alpha"), py::arg("d_max"));

  py::class_<idsec::InfectionModel>(m, "InfectionModel")
      .def_static("power_law", &idsec::InfectionModel::power_law, py::arg("exponent"),
                  py::arg("loss"))
      .def_static("custom", &idsec::InfectionModel::custom, py::arg("p"), py::arg("dp"),
                  py::arg("loss"))
      .def("p", &idsec::InfectionModel::p, py::arg("a"))
      .def("dp", &idsec::InfectionModel::dp, py::arg("a"))
      .def_property_readonly("loss", &idsec::InfectionModel::loss)
      .def_property_readonly("is_power_law", &idsec::InfectionModel::is_power_law);

  py::class_<idsec::ExposureModel>(m, "ExposureModel")
      .def_static("power", &idsec::ExposureModel::power, py::arg("coef"),
                  py::arg("exponent"))
      .def_static("log_shape", &idsec::ExposureModel::log_shape, py::arg("coef"))
      .def_static("custom", &idsec::ExposureModel::custom, py::arg("gplus"),
                  py::arg("dgplus"))
      .def("gplus", &idsec::ExposureModel::gplus, py::arg("z"))
      .def("dgplus", &idsec::ExposureModel::dgplus, py::arg("z"));

  py::class_<idsec::GameParams>(m, "GameParams")
      .def(py::init<>())
      .def_readwrite("direct_attack_prob", &idsec::GameParams::direct_attack_prob)
      .def_readwrite("indirect_attack_prob", &idsec::GameParams::indirect_attack_prob)
      .def_readwrite("invest_min", &idsec::GameParams::invest_min)
      .def_readwrite("invest_max", &idsec::GameParams::invest_max);

  py::class_<idsec::Game>(m, "Game")
      .def(py::init<idsec::PopulationVector, idsec::InfectionModel, idsec::ExposureModel,
                    idsec::GameParams>(),
           py::arg("census"), py::arg("infection"), py::arg("exposure"),
           py::arg("params") = idsec::GameParams())
      .def_readonly("census", &idsec::Game::census)
      .def_readonly("infection", &idsec::Game::infection)
      .def_readonly("exposure", &idsec::Game::exposure)
      .def_readonly("params", &idsec::Game::params);

  py::class_<idsec::StrategyProfile>(m, "StrategyProfile")
      .def(py::init<>())
      .def(py::init<std::vector<double>>(), py::arg("investments"))
      .def_readwrite("investments", &idsec::StrategyProfile::investments)
      .def("__len__", &idsec::StrategyProfile::size);
  py::implicitly_convertible<py::list, idsec::StrategyProfile>();

  py::class_<idsec::ScalarSolveSettings>(m, "ScalarSolveSettings")
      .def(py::init<>())
      .def_readwrite("tolerance", &idsec::ScalarSolveSettings::tolerance)
      .def_readwrite("max_iterations", &idsec::ScalarSolveSettings::max_iterations);

  py::class_<idsec::FixedPointSettings>(m, "FixedPointSettings")
      .def(py::init<>())
      .def_readwrite("rho_tolerance", &idsec::FixedPointSettings::rho_tolerance)
      .def_readwrite("max_iterations", &idsec::FixedPointSettings::max_iterations);

  py::class_<idsec::EquilibriumResult>(m, "EquilibriumResult")
      .def_readonly("profile", &idsec::EquilibriumResult::profile)
      .def_readonly("vulnerability", &idsec::EquilibriumResult::vulnerability)
      .def_readonly("exposure", &idsec::EquilibriumResult::exposure)
      .def_readonly("per_degree_cost", &idsec::EquilibriumResult::per_degree_cost)
      .def_readonly("social_cost", &idsec::EquilibriumResult::social_cost)
      .def_readonly("iterations", &idsec::EquilibriumResult::iterations)
      .def_readonly("residual", &idsec::EquilibriumResult::residual);

  m.def("optimal_investment", &idsec::optimal_investment, py::arg("risk"),
        py::arg("infection"), py::arg("params"),
        py::arg("settings") = idsec::ScalarSolveSettings());
  m.def("best_response_infection", &idsec::best_response_infection, py::arg("risk"),
        py::arg("infection"), py::arg("params"),
        py::arg("settings") = idsec::ScalarSolveSettings());

  m.def("neighbor_vulnerability", &idsec::neighbor_vulnerability, py::arg("game"),
        py::arg("profile"));
  m.def("indirect_attack_rate", &idsec::indirect_attack_rate, py::arg("game"),
        py::arg("profile"));
  m.def("risk_exposure", &idsec::risk_exposure, py::arg("game"), py::arg("profile"));
  m.def("agent_cost", &idsec::agent_cost, py::arg("game"), py::arg("profile"),
        py::arg("degree"));
  m.def("solve_ne", &idsec::solve_ne, py::arg("game"),
        py::arg("settings") = idsec::FixedPointSettings());
  m.def("verify_ne", &idsec::verify_ne, py::arg("game"), py::arg("profile"));

  m.def("internalized_exposure", &idsec::internalized_exposure, py::arg("exposure"),
        py::arg("z"));
  m.def("internalized_exposure_increasing", &idsec::internalized_exposure_increasing,
        py::arg("exposure"), py::arg("z_max"));
  m.def("social_cost", &idsec::social_cost, py::arg("game"), py::arg("profile"));
  m.def("internalized_cost", &idsec::internalized_cost, py::arg("game"),
        py::arg("profile"), py::arg("degree"));
  m.def("social_cost_gradient", &idsec::social_cost_gradient, py::arg("game"),
        py::arg("profile"));
  m.def("solve_social_optimum", &idsec::solve_social_optimum, py::arg("game"),
        py::arg("settings") = idsec::FixedPointSettings());
  m.def("brute_force_social_optimum", &idsec::brute_force_social_optimum, py::arg("game"),
        py::arg("grid_step"));

  py::class_<idsec::KktReport>(m, "KktReport")
      .def_readonly("stationarity", &idsec::KktReport::stationarity)
      .def_readonly("lower_multiplier", &idsec::KktReport::lower_multiplier)
      .def_readonly("upper_multiplier", &idsec::KktReport::upper_multiplier)
      .def_readonly("at_lower", &idsec::KktReport::at_lower)
      .def_readonly("at_upper", &idsec::KktReport::at_upper)
      .def_readonly("max_abs_stationarity", &idsec::KktReport::max_abs_stationarity)
      .def_readonly("complementarity_gap", &idsec::KktReport::complementarity_gap);
  m.def("kkt_residual", &idsec::kkt_residual, py::arg("game"), py::arg("profile"));

  py::class_<idsec::PenaltySchedule>(m, "PenaltySchedule")
      .def_readonly("penalties", &idsec::PenaltySchedule::penalties)
      .def_readonly("indirect_losses", &idsec::PenaltySchedule::indirect_losses);
  m.def("penalty_schedule", &idsec::penalty_schedule, py::arg("game"),
        py::arg("settings") = idsec::FixedPointSettings());
  m.def("price_of_anarchy", &idsec::price_of_anarchy, py::arg("game"),
        py::arg("settings") = idsec::FixedPointSettings());

  py::class_<idsec::DominanceVerdict>(m, "DominanceVerdict")
      .def_readonly("holds", &idsec::DominanceVerdict::holds)
      .def_readonly("strict_somewhere", &idsec::DominanceVerdict::strict_somewhere)
      .def_readonly("first_violation_degree",
                    &idsec::DominanceVerdict::first_violation_degree);
  m.def("fosd_weighted", &idsec::fosd_weighted, py::arg("s1"), py::arg("s2"));
  m.def("likelihood_ratio_condition", &idsec::likelihood_ratio_condition, py::arg("s1"),
        py::arg("s2"));
  m.def(
      "prefix_ratio_check",
      [](const std::vector<double>& a_seq, const std::vector<double>& b_seq) {
        return idsec::prefix_ratio_check(a_seq, b_seq);
      },
      py::arg("a_seq"), py::arg("b_seq"));

  py::class_<idsec::MonotonicityPair>(m, "MonotonicityPair")
      .def_readonly("index", &idsec::MonotonicityPair::index)
      .def_readonly("dominance", &idsec::MonotonicityPair::dominance)
      .def_readonly("checked", &idsec::MonotonicityPair::checked)
      .def_readonly("e_ne_first", &idsec::MonotonicityPair::e_ne_first)
      .def_readonly("e_ne_second", &idsec::MonotonicityPair::e_ne_second)
      .def_readonly("e_so_first", &idsec::MonotonicityPair::e_so_first)
      .def_readonly("e_so_second", &idsec::MonotonicityPair::e_so_second)
      .def_readonly("exposure_ne_ordered", &idsec::MonotonicityPair::exposure_ne_ordered)
      .def_readonly("exposure_so_ordered", &idsec::MonotonicityPair::exposure_so_ordered)
      .def_readonly("investments_ordered", &idsec::MonotonicityPair::investments_ordered)
      .def_readonly("holds", &idsec::MonotonicityPair::holds);
  py::class_<idsec::MonotonicityReport>(m, "MonotonicityReport")
      .def_readonly("pairs", &idsec::MonotonicityReport::pairs)
      .def_readonly("all_checked_hold", &idsec::MonotonicityReport::all_checked_hold);
  m.def("monotonicity_sweep", &idsec::monotonicity_sweep, py::arg("family"),
        py::arg("infection"), py::arg("exposure"), py::arg("params"),
        py::arg("settings") = idsec::FixedPointSettings());

  py::class_<idsec::ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("alpha_grid", &idsec::ExperimentConfig::alpha_grid)
      .def_readwrite("zeta", &idsec::ExperimentConfig::zeta)
      .def_readwrite("loss", &idsec::ExperimentConfig::loss)
      .def_readwrite("exposure_coef", &idsec::ExperimentConfig::exposure_coef)
      .def_readwrite("exposure_b", &idsec::ExperimentConfig::exposure_b)
      .def_readwrite("tau_a", &idsec::ExperimentConfig::tau_a)
      .def_readwrite("beta_ia", &idsec::ExperimentConfig::beta_ia)
      .def_readwrite("i_min", &idsec::ExperimentConfig::i_min)
      .def_readwrite("i_max", &idsec::ExperimentConfig::i_max)
      .def_readwrite("d_max", &idsec::ExperimentConfig::d_max)
      .def_readwrite("tolerance", &idsec::ExperimentConfig::tolerance)
      .def_readwrite("output_path", &idsec::ExperimentConfig::output_path);
  m.def("load_config", &idsec::load_config, py::arg("path"));
  m.def("apply_config_entry", &idsec::apply_config_entry, py::arg("config"),
        py::arg("key"), py::arg("value"));
  m.def("make_infection", &idsec::make_infection, py::arg("config"));
  m.def("make_exposure", &idsec::make_exposure, py::arg("config"));
  m.def("make_params", &idsec::make_params, py::arg("config"));
  m.def("make_game", &idsec::make_game, py::arg("config"), py::arg("census"));

  py::class_<idsec::SweepRow>(m, "SweepRow")
      .def_readonly("alpha", &idsec::SweepRow::alpha)
      .def_readonly("e_ne", &idsec::SweepRow::e_ne)
      .def_readonly("e_so", &idsec::SweepRow::e_so)
      .def_readonly("cost_ne", &idsec::SweepRow::cost_ne)
      .def_readonly("cost_so", &idsec::SweepRow::cost_so)
      .def_readonly("poa", &idsec::SweepRow::poa)
      .def_readonly("rho_ne", &idsec::SweepRow::rho_ne)
      .def_readonly("rho_so", &idsec::SweepRow::rho_so);
  m.def("run_sweep", &idsec::run_sweep, py::arg("config"));
  m.def("to_csv", &idsec::to_csv, py::arg("rows"));
  m.def("write_csv", &idsec::write_csv, py::arg("rows"), py::arg("path"));
  m.def("read_census_csv", &idsec::read_census_csv, py::arg("path"));
  m.def("format_double", &idsec::format_double, py::arg("value"));
}
