// Python bindings for the contract-analytics core.  Field names follow the
// C++ structs except `lambda`, which Python reserves; it is exposed as `lam`.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "contractlab/csv.hpp"
#include "contractlab/figures.hpp"
#include "contractlab/model.hpp"
#include "contractlab/multi_gen.hpp"
#include "contractlab/scenario.hpp"
#include "contractlab/sim.hpp"
#include "contractlab/single_gen.hpp"
#include "contractlab/special_fn.hpp"
#include "contractlab/table.hpp"

namespace py = pybind11;
using namespace contractlab;

PYBIND11_MODULE(_contractlab, m) {
  m.doc() = "analytics for capacity contracts with stochastic demand";

  auto err = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", err.ptr());
  py::register_exception<NoViableMargin>(m, "NoViableMargin", err.ptr());
  py::register_exception<ReservationTooHigh>(m, "ReservationTooHigh", err.ptr());
  py::register_exception<ParticipationViolated>(m, "ParticipationViolated", err.ptr());
  py::register_exception<UnknownFigure>(m, "UnknownFigure", err.ptr());
  py::register_exception<ParseError>(m, "ScenarioParseError", err.ptr());

  py::class_<MarketParams>(m, "MarketParams")
      .def(py::init([](double r, double c, double k, double b, double lam,
                       std::optional<double> delta, double reservation) {
             MarketParams p;
             p.r = r;
             p.c = c;
             p.k = k;
             p.b = b;
             p.lambda = lam;
             p.delta = delta;
             p.reservation = reservation;
             return p;
           }),
           py::arg("r"), py::arg("c"), py::arg("k") = 0.0, py::arg("b") = 0.0,
           py::arg("lam") = 1.0, py::arg("delta") = py::none(), py::arg("reservation") = 0.0)
      .def_readwrite("r", &MarketParams::r)
      .def_readwrite("c", &MarketParams::c)
      .def_readwrite("k", &MarketParams::k)
      .def_readwrite("b", &MarketParams::b)
      .def_readwrite("lam", &MarketParams::lambda)
      .def_readwrite("delta", &MarketParams::delta)
      .def_readwrite("reservation", &MarketParams::reservation);

  py::class_<DemandModel>(m, "DemandModel")
      .def_static("exponential", &DemandModel::exponential, py::arg("base"), py::arg("lam"))
      .def_static("erlang", &DemandModel::erlang, py::arg("base"), py::arg("lam"), py::arg("n"))
      .def_readonly("base", &DemandModel::base)
      .def_readonly("lam", &DemandModel::lambda)
      .def_readonly("n", &DemandModel::n)
      .def_property_readonly("kind",
                             [](const DemandModel& d) {
                               return d.kind == TailKind::Exponential ? "exponential" : "erlang";
                             })
      .def("mean", &DemandModel::mean)
      .def("tail_mean", &DemandModel::tail_mean)
      .def("survival", &DemandModel::survival, py::arg("x"))
      .def("tail_survival", &DemandModel::tail_survival, py::arg("y"))
      .def("tail_density", &DemandModel::tail_density, py::arg("y"))
      .def("expected_sales", &DemandModel::expected_sales, py::arg("x"))
      .def("expected_shortfall", &DemandModel::expected_shortfall, py::arg("x"));

  py::class_<Wholesale>(m, "Wholesale")
      .def(py::init([](double w) { return Wholesale{w}; }), py::arg("w"))
      .def_readwrite("w", &Wholesale::w);
  py::class_<LumpSumPenalty>(m, "LumpSumPenalty")
      .def(py::init([](double w, double rho) { return LumpSumPenalty{w, rho}; }), py::arg("w"),
           py::arg("rho"))
      .def_readwrite("w", &LumpSumPenalty::w)
      .def_readwrite("rho", &LumpSumPenalty::rho);
  py::class_<UnitPenalty>(m, "UnitPenalty")
      .def(py::init([](double w, double rho1) { return UnitPenalty{w, rho1}; }), py::arg("w"),
           py::arg("rho1"))
      .def_readwrite("w", &UnitPenalty::w)
      .def_readwrite("rho1", &UnitPenalty::rho1);
  py::class_<Renewal>(m, "Renewal")
      .def(py::init([](double w, std::optional<double> R) {
             Renewal ren;
             ren.w = w;
             if (R) ren.mode = ExogenousProb{*R};
             return ren;
           }),
           py::arg("w"), py::arg("R") = py::none(), "contingent renewal; pass R for a fixed "
                                                    "exogenous renewal probability")
      .def_readwrite("w", &Renewal::w)
      .def_property_readonly("R", [](const Renewal& ren) -> std::optional<double> {
        if (const auto* ex = std::get_if<ExogenousProb>(&ren.mode)) return ex->R;
        return std::nullopt;
      });

  py::class_<CentralizedSolution>(m, "CentralizedSolution")
      .def_readonly("x_star", &CentralizedSolution::x_star)
      .def_readonly("pi_star", &CentralizedSolution::pi_star);

  py::class_<OutcomeReport>(m, "OutcomeReport")
      .def_readonly("capacity", &OutcomeReport::capacity)
      .def_readonly("supplier_profit", &OutcomeReport::supplier_profit)
      .def_readonly("oem_profit", &OutcomeReport::oem_profit)
      .def_readonly("chain_profit", &OutcomeReport::chain_profit)
      .def_readonly("first_best_profit", &OutcomeReport::first_best_profit)
      .def_readonly("efficiency", &OutcomeReport::efficiency)
      .def_readonly("supplier_npv", &OutcomeReport::supplier_npv)
      .def_readonly("oem_npv", &OutcomeReport::oem_npv)
      .def_readonly("chain_npv", &OutcomeReport::chain_npv)
      .def_readonly("oem_fraction", &OutcomeReport::oem_fraction)
      .def_readonly("expected_duration", &OutcomeReport::expected_duration)
      .def_readonly("annotations", &OutcomeReport::annotations);

  py::class_<WholesaleSolution>(m, "WholesaleSolution")
      .def_readonly("w_tilde", &WholesaleSolution::w_tilde)
      .def_readonly("report", &WholesaleSolution::report);

  py::class_<Enforceability>(m, "Enforceability")
      .def_readonly("best_case_profit", &Enforceability::best_case_profit)
      .def_readonly("shortfall_probability", &Enforceability::shortfall_probability)
      .def_readonly("penalty_to_best_case_ratio", &Enforceability::penalty_to_best_case_ratio)
      .def_readonly("penalty_to_wholesale_ratio", &Enforceability::penalty_to_wholesale_ratio);

  py::class_<PenaltyContractSolution>(m, "PenaltyContractSolution")
      .def_property_readonly("kind",
                             [](const PenaltyContractSolution& s) {
                               return s.kind == PenaltyKind::LumpSum ? "lump_sum" : "unit_penalty";
                             })
      .def_readonly("w_hat", &PenaltyContractSolution::w_hat)
      .def_readonly("penalty", &PenaltyContractSolution::penalty)
      .def_readonly("capacity", &PenaltyContractSolution::capacity)
      .def_readonly("supplier_profit", &PenaltyContractSolution::supplier_profit)
      .def_readonly("oem_profit", &PenaltyContractSolution::oem_profit)
      .def_readonly("enforceability", &PenaltyContractSolution::enforceability);

  py::class_<RenewalAnalysis>(m, "RenewalAnalysis")
      .def_readonly("capacity", &RenewalAnalysis::capacity)
      .def_readonly("renewal_prob", &RenewalAnalysis::renewal_prob)
      .def_readonly("expected_generations", &RenewalAnalysis::expected_generations)
      .def_readonly("supplier_npv", &RenewalAnalysis::supplier_npv)
      .def_readonly("oem_npv", &RenewalAnalysis::oem_npv)
      .def_readonly("chain_npv_first_best", &RenewalAnalysis::chain_npv_first_best)
      .def_readonly("oem_fraction", &RenewalAnalysis::oem_fraction);

  py::class_<EndogenousOptimum>(m, "EndogenousOptimum")
      .def_readonly("w_opt", &EndogenousOptimum::w_opt)
      .def_readonly("analysis", &EndogenousOptimum::analysis)
      .def_readonly("w_coord", &EndogenousOptimum::w_coord)
      .def_readonly("oem_profit_opt", &EndogenousOptimum::oem_profit_opt)
      .def_readonly("oem_profit_coord", &EndogenousOptimum::oem_profit_coord)
      .def_readonly("pct_difference", &EndogenousOptimum::pct_difference);

  m.def("centralized_optimum", &centralized_optimum, py::arg("params"), py::arg("demand"));
  m.def("supplier_best_response_wholesale", &supplier_best_response_wholesale, py::arg("params"),
        py::arg("demand"), py::arg("w"));
  m.def("supplier_profit", &supplier_profit, py::arg("params"), py::arg("demand"), py::arg("w"),
        py::arg("x"));
  m.def("oem_profit", &oem_profit, py::arg("params"), py::arg("demand"), py::arg("w"),
        py::arg("x"));
  m.def("oem_optimal_wholesale", &oem_optimal_wholesale, py::arg("params"), py::arg("demand"));
  m.def("coordinated_lump_sum", &coordinated_lump_sum, py::arg("params"), py::arg("demand"));
  m.def("coordinated_unit_penalty", &coordinated_unit_penalty, py::arg("params"),
        py::arg("demand"));
  m.def("coordinated_penalty_numeric", &coordinated_penalty_numeric, py::arg("params"),
        py::arg("demand"));
  m.def("min_wholesale_for_reservation", &min_wholesale_for_reservation, py::arg("params"));

  m.def("supplier_npv_endogenous", &supplier_npv_endogenous, py::arg("params"), py::arg("demand"),
        py::arg("w"), py::arg("x"));
  m.def("npv_exogenous", &npv_exogenous, py::arg("params"), py::arg("demand"), py::arg("w"),
        py::arg("R"));
  m.def("supplier_best_response_endogenous", &supplier_best_response_endogenous,
        py::arg("params"), py::arg("demand"), py::arg("w"));
  m.def("coordinating_wholesale", &coordinating_wholesale, py::arg("params"), py::arg("demand"));
  m.def("coordinated_renewal_report", &coordinated_renewal_report, py::arg("params"),
        py::arg("demand"));
  m.def("asymptotic_oem_fraction", &asymptotic_oem_fraction, py::arg("params"));
  m.def("optimal_wholesale_endogenous", &optimal_wholesale_endogenous, py::arg("params"),
        py::arg("demand"));

  m.def(
      "lambert_w",
      [](double x, const std::string& branch) {
        if (branch == "principal") return lambert_w(WBranch::Principal, x);
        if (branch == "minus_one") return lambert_w(WBranch::MinusOne, x);
        throw DomainError("branch must be 'principal' or 'minus_one'");
      },
      py::arg("x"), py::arg("branch") = "principal");
  m.def("lambert_w0_of_exp", &lambert_w0_of_exp, py::arg("y"));
  m.def("reg_lower_gamma_int", &reg_lower_gamma_int, py::arg("n"), py::arg("z"));
  m.def("reg_upper_gamma_int", &reg_upper_gamma_int, py::arg("n"), py::arg("z"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](std::uint64_t seed, long replications, int horizon_cap) {
             SimConfig cfg;
             cfg.seed = seed;
             cfg.replications = replications;
             cfg.horizon_cap = horizon_cap;
             return cfg;
           }),
           py::arg("seed") = 0, py::arg("replications") = 100000, py::arg("horizon_cap") = 0)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("replications", &SimConfig::replications)
      .def_readwrite("horizon_cap", &SimConfig::horizon_cap);

  py::class_<SimEstimate>(m, "SimEstimate")
      .def_readonly("mean", &SimEstimate::mean)
      .def_readonly("std_error", &SimEstimate::std_error)
      .def_readonly("replications", &SimEstimate::replications);
  py::class_<ProfitEstimates>(m, "ProfitEstimates")
      .def_readonly("supplier", &ProfitEstimates::supplier)
      .def_readonly("oem", &ProfitEstimates::oem);
  py::class_<RelationshipEstimate>(m, "RelationshipEstimate")
      .def_readonly("supplier_npv", &RelationshipEstimate::supplier_npv)
      .def_readonly("duration", &RelationshipEstimate::duration);

  m.def("estimate_single_gen_profit", &estimate_single_gen_profit, py::arg("params"),
        py::arg("demand"), py::arg("terms"), py::arg("x"), py::arg("config") = SimConfig{});
  m.def("estimate_relationship_npv", &estimate_relationship_npv, py::arg("params"),
        py::arg("demand"), py::arg("w"), py::arg("x"), py::arg("config") = SimConfig{});

  py::class_<CsvTable>(m, "CsvTable")
      .def_readonly("columns", &CsvTable::columns)
      .def_readonly("rows", &CsvTable::rows)
      .def("to_text",
           [](const CsvTable& t) {
             std::ostringstream os;
             write_csv(os, t);
             return os.str();
           })
      .def("write", [](const CsvTable& t, const std::string& path) { write_csv_file(path, t); },
           py::arg("path"));

  m.def("figure_ids", &figure_ids);
  m.def("figure_data", &emit_figure_data, py::arg("figure_id"));

  py::class_<FactorialCell>(m, "FactorialCell")
      .def_readonly("r_minus_k", &FactorialCell::r_minus_k)
      .def_readonly("b", &FactorialCell::b)
      .def_readonly("lam", &FactorialCell::lambda)
      .def_readonly("delta", &FactorialCell::delta)
      .def_readonly("w_opt", &FactorialCell::w_opt)
      .def_readonly("w_coord", &FactorialCell::w_coord)
      .def_readonly("oem_profit_opt", &FactorialCell::oem_profit_opt)
      .def_readonly("oem_profit_coord", &FactorialCell::oem_profit_coord)
      .def_readonly("pct_difference", &FactorialCell::pct_difference)
      .def_readonly("duration_opt", &FactorialCell::duration_opt)
      .def_readonly("duration_coord", &FactorialCell::duration_coord)
      .def_readonly("error", &FactorialCell::error);
  py::class_<AxisSummary>(m, "AxisSummary")
      .def_readonly("axis", &AxisSummary::axis)
      .def_readonly("value", &AxisSummary::value)
      .def_readonly("cells", &AxisSummary::cells)
      .def_readonly("profit_opt_mean", &AxisSummary::profit_opt_mean)
      .def_readonly("profit_coord_mean", &AxisSummary::profit_coord_mean)
      .def_readonly("pct_mean", &AxisSummary::pct_mean)
      .def_readonly("pct_max", &AxisSummary::pct_max)
      .def_readonly("pct_min", &AxisSummary::pct_min)
      .def_readonly("duration_opt_mean", &AxisSummary::duration_opt_mean)
      .def_readonly("duration_coord_mean", &AxisSummary::duration_coord_mean);
  py::class_<FactorialResult>(m, "FactorialResult")
      .def_readonly("cells", &FactorialResult::cells)
      .def_readonly("summary", &FactorialResult::summary)
      .def_readonly("failures", &FactorialResult::failures);
  m.def("run_factorial", [] { return run_factorial(); });
  m.def("factorial_cells_csv", &factorial_cells_csv, py::arg("result"));
  m.def("factorial_summary_csv", &factorial_summary_csv, py::arg("result"));

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("market", &Scenario::market)
      .def_readwrite("demand", &Scenario::demand)
      .def_readwrite("contract", &Scenario::contract)
      .def_property_readonly("directive",
                             [](const Scenario& s) {
                               switch (s.directive) {
                                 case Directive::Coordinate: return "coordinate";
                                 case Directive::Optimize: return "optimize";
                                 default: return "none";
                               }
                             })
      .def_readwrite("sim", &Scenario::sim);
  m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"));
  m.def("render_scenario", &render_scenario, py::arg("scenario"));
}
