#include <clocale>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "contractlab/csv.hpp"
#include "contractlab/figures.hpp"
#include "contractlab/multi_gen.hpp"
#include "contractlab/scenario.hpp"
#include "contractlab/sim.hpp"
#include "contractlab/single_gen.hpp"
#include "contractlab/solve.hpp"
#include "contractlab/table.hpp"

namespace cl = contractlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitPartial = 4;

struct Options {
  std::string out;
  bool strict = false;
  std::optional<std::uint64_t> seed;
};

void print_kv(const std::string& key, const std::string& value) {
  std::cout << std::left << std::setw(26) << key << value << "\n";
}

void print_kv(const std::string& key, double value) { print_kv(key, cl::format_cell(value)); }

void emit_table(const cl::CsvTable& t, const Options& opt) {
  if (opt.out.empty()) {
    cl::write_csv(std::cout, t);
  } else {
    cl::write_csv_file(opt.out, t);
    std::cout << "wrote " << t.rows.size() << " rows to " << opt.out << "\n";
  }
}

// Returns kExitParse on fatal issues (or warnings under --strict), else kExitOk.
int report_validation(const cl::Scenario& s, const Options& opt, bool quiet_ok) {
  const cl::ValidationResult v = cl::validate(s.market, s.demand);
  for (const auto& issue : v.fatal)
    std::cout << "fatal   [" << issue.constraint << "] " << issue.message << "\n";
  for (const auto& issue : v.warnings)
    std::cout << "warning [" << issue.constraint << "] " << issue.message << "\n";
  if (!v.usable()) return kExitParse;
  if (opt.strict && !v.clean()) {
    std::cout << "strict mode: warnings are treated as errors\n";
    return kExitParse;
  }
  if (!quiet_ok && v.clean()) std::cout << "ok\n";
  return kExitOk;
}

int do_check(const std::string& path, const Options& opt) {
  const cl::Scenario s = cl::parse_scenario_file(path);
  const int rc = report_validation(s, opt, false);
  if (!opt.out.empty()) {
    const cl::ValidationResult v = cl::validate(s.market, s.demand);
    cl::CsvTable t;
    t.columns = {"severity", "constraint", "message"};
    for (const auto& i : v.fatal) t.rows.push_back({"fatal", i.constraint, i.message});
    for (const auto& i : v.warnings) t.rows.push_back({"warning", i.constraint, i.message});
    cl::write_csv_file(opt.out, t);
  }
  return rc;
}

std::vector<std::string> scenario_prefix_cells(const cl::Scenario& s) {
  return {cl::format_cell(s.market.r),
          cl::format_cell(s.market.c),
          cl::format_cell(s.market.k),
          cl::format_cell(s.market.b),
          cl::format_cell(s.market.lambda),
          s.market.delta ? cl::format_cell(*s.market.delta) : "",
          cl::format_cell(s.market.reservation),
          s.demand.kind == cl::TailKind::Exponential ? "exponential" : "erlang",
          std::to_string(s.demand.n)};
}

const std::vector<std::string> kScenarioColumns = {
    "r", "c", "k", "b", "lambda", "delta", "reservation", "demand_kind", "demand_n"};

int do_single(const std::string& path, const Options& opt) {
  const cl::Scenario s = cl::parse_scenario_file(path);
  if (int rc = report_validation(s, opt, true)) return rc;
  const cl::CentralizedSolution fb = cl::centralized_optimum(s.market, s.demand);
  double w = 0.0;
  cl::OutcomeReport rep;
  bool given_w = false;
  if (s.contract && std::holds_alternative<cl::Wholesale>(*s.contract)) {
    given_w = true;
    w = std::get<cl::Wholesale>(*s.contract).w;
    const double x = cl::supplier_best_response_wholesale(s.market, s.demand, w);
    rep.capacity = x;
    rep.supplier_profit = cl::supplier_profit(s.market, s.demand, w, x);
    rep.oem_profit = cl::oem_profit(s.market, s.demand, w, x);
    rep.chain_profit = rep.supplier_profit + rep.oem_profit;
    rep.first_best_profit = fb.pi_star;
    rep.efficiency = rep.chain_profit / fb.pi_star;
  } else {
    const cl::WholesaleSolution sol = cl::oem_optimal_wholesale(s.market, s.demand);
    w = sol.w_tilde;
    rep = sol.report;
  }
  print_kv(given_w ? "w" : "w_tilde", w);
  print_kv("capacity", rep.capacity);
  print_kv("first_best_capacity", fb.x_star);
  print_kv("supplier_profit", rep.supplier_profit);
  print_kv("oem_profit", rep.oem_profit);
  print_kv("chain_profit", rep.chain_profit);
  print_kv("first_best_profit", rep.first_best_profit);
  print_kv("efficiency", rep.efficiency);
  for (const auto& a : rep.annotations) print_kv("note", a);
  if (!opt.out.empty()) {
    cl::CsvTable t;
    t.columns = kScenarioColumns;
    for (const char* c : {"w", "capacity", "supplier_profit", "oem_profit", "chain_profit",
                          "first_best_profit", "efficiency", "note"})
      t.columns.push_back(c);
    auto row = scenario_prefix_cells(s);
    for (double v : {w, rep.capacity, rep.supplier_profit, rep.oem_profit, rep.chain_profit,
                     rep.first_best_profit, rep.efficiency})
      row.push_back(cl::format_cell(v));
    row.push_back(rep.annotations.empty() ? "" : rep.annotations.front());
    t.rows.push_back(row);
    cl::write_csv_file(opt.out, t);
  }
  return kExitOk;
}

int do_penalty(const std::string& path, const Options& opt, bool prefer_unit) {
  const cl::Scenario s = cl::parse_scenario_file(path);
  if (int rc = report_validation(s, opt, true)) return rc;
  cl::PenaltyContractSolution sol;
  if (prefer_unit || (s.contract && std::holds_alternative<cl::UnitPenalty>(*s.contract))) {
    sol = cl::coordinated_unit_penalty(s.market, s.demand);
  } else {
    sol = cl::coordinated_lump_sum(s.market, s.demand);
  }
  const bool lump = sol.kind == cl::PenaltyKind::LumpSum;
  print_kv("contract", lump ? "lump_sum" : "unit_penalty");
  print_kv("w_hat", sol.w_hat);
  print_kv(lump ? "rho" : "rho1", sol.penalty);
  print_kv("capacity", sol.capacity);
  print_kv("supplier_profit", sol.supplier_profit);
  print_kv("oem_profit", sol.oem_profit);
  print_kv("best_case_profit", sol.enforceability.best_case_profit);
  print_kv("shortfall_probability", sol.enforceability.shortfall_probability);
  print_kv("penalty_to_best_case", sol.enforceability.penalty_to_best_case_ratio);
  print_kv("penalty_to_wholesale", sol.enforceability.penalty_to_wholesale_ratio);
  if (!opt.out.empty()) {
    cl::CsvTable t;
    t.columns = kScenarioColumns;
    for (const char* c :
         {"contract", "w_hat", "penalty", "capacity", "supplier_profit", "oem_profit",
          "best_case_profit", "shortfall_probability", "penalty_to_best_case",
          "penalty_to_wholesale"})
      t.columns.push_back(c);
    auto row = scenario_prefix_cells(s);
    row.push_back(lump ? "lump_sum" : "unit_penalty");
    for (double v : {sol.w_hat, sol.penalty, sol.capacity, sol.supplier_profit, sol.oem_profit,
                     sol.enforceability.best_case_profit, sol.enforceability.shortfall_probability,
                     sol.enforceability.penalty_to_best_case_ratio,
                     sol.enforceability.penalty_to_wholesale_ratio})
      row.push_back(cl::format_cell(v));
    t.rows.push_back(row);
    cl::write_csv_file(opt.out, t);
  }
  return kExitOk;
}

void print_analysis(const cl::RenewalAnalysis& a) {
  print_kv("capacity", a.capacity);
  print_kv("renewal_prob", a.renewal_prob);
  print_kv("expected_generations", a.expected_generations);
  print_kv("supplier_npv", a.supplier_npv);
  print_kv("oem_npv", a.oem_npv);
  print_kv("chain_npv_first_best", a.chain_npv_first_best);
  print_kv("oem_fraction", a.oem_fraction);
}

int do_renewal(const std::string& path, const Options& opt) {
  const cl::Scenario s = cl::parse_scenario_file(path);
  if (int rc = report_validation(s, opt, true)) return rc;
  cl::RenewalAnalysis a;
  double w = 0.0;
  std::string mode;
  if (s.contract && std::holds_alternative<cl::Renewal>(*s.contract) &&
      std::holds_alternative<cl::ExogenousProb>(std::get<cl::Renewal>(*s.contract).mode)) {
    const auto& ren = std::get<cl::Renewal>(*s.contract);
    w = ren.w;
    a = cl::npv_exogenous(s.market, s.demand, w, std::get<cl::ExogenousProb>(ren.mode).R);
    mode = "exogenous";
  } else if (s.directive == cl::Directive::Optimize) {
    const cl::EndogenousOptimum o = cl::optimal_wholesale_endogenous(s.market, s.demand);
    w = o.w_opt;
    a = o.analysis;
    mode = "optimal";
    print_kv("w_opt", o.w_opt);
    print_kv("w_coord", o.w_coord);
    print_kv("oem_profit_opt", o.oem_profit_opt);
    print_kv("oem_profit_coord", o.oem_profit_coord);
    print_kv("pct_difference", o.pct_difference);
  } else if (s.contract && std::holds_alternative<cl::Renewal>(*s.contract)) {
    const auto& ren = std::get<cl::Renewal>(*s.contract);
    w = ren.w;
    const double delta = s.market.require_delta();
    const double x = cl::supplier_best_response_endogenous(s.market, s.demand, w);
    const double surv = s.demand.survival(x);
    const cl::CentralizedSolution fb = cl::centralized_optimum(s.market, s.demand);
    a.capacity = x;
    a.renewal_prob = 1.0 - surv;
    a.expected_generations = 1.0 / surv;
    a.supplier_npv = cl::supplier_npv_endogenous(s.market, s.demand, w, x);
    a.oem_npv = cl::oem_profit(s.market, s.demand, w, x) / (1.0 - delta);
    a.chain_npv_first_best = fb.pi_star / (1.0 - delta);
    a.oem_fraction = a.oem_npv / a.chain_npv_first_best;
    mode = "endogenous";
  } else {
    w = cl::coordinating_wholesale(s.market, s.demand);
    a = cl::coordinated_renewal_report(s.market, s.demand);
    mode = "coordinate";
    print_kv("asymptotic_oem_fraction", cl::asymptotic_oem_fraction(s.market));
  }
  print_kv("mode", mode);
  print_kv("w", w);
  print_analysis(a);
  if (!opt.out.empty()) {
    cl::CsvTable t;
    t.columns = kScenarioColumns;
    for (const char* c : {"mode", "w", "capacity", "renewal_prob", "expected_generations",
                          "supplier_npv", "oem_npv", "chain_npv_first_best", "oem_fraction"})
      t.columns.push_back(c);
    auto row = scenario_prefix_cells(s);
    row.push_back(mode);
    for (double v : {w, a.capacity, a.renewal_prob, a.expected_generations, a.supplier_npv,
                     a.oem_npv, a.chain_npv_first_best, a.oem_fraction})
      row.push_back(cl::format_cell(v));
    t.rows.push_back(row);
    cl::write_csv_file(opt.out, t);
  }
  return kExitOk;
}

int do_factorial(const Options& opt) {
  const cl::FactorialResult res = cl::run_factorial();
  const cl::CsvTable summary = cl::factorial_summary_csv(res);
  for (const auto& s : res.summary) {
    std::ostringstream label;
    label << s.axis;
    if (s.axis != "overall") label << " = " << cl::format_cell(s.value);
    std::cout << std::left << std::setw(20) << label.str() << " profit_opt "
              << std::setw(10) << cl::format_cell(s.profit_opt_mean) << " profit_coord "
              << std::setw(10) << cl::format_cell(s.profit_coord_mean) << " pct "
              << std::setw(10) << cl::format_cell(s.pct_mean) << " dur_opt "
              << std::setw(10) << cl::format_cell(s.duration_opt_mean) << " dur_coord "
              << cl::format_cell(s.duration_coord_mean) << "\n";
  }
  if (!opt.out.empty()) {
    cl::write_csv_file(opt.out, cl::factorial_cells_csv(res));
    std::cout << "wrote " << res.cells.size() << " cells to " << opt.out << "\n";
  }
  if (res.failures > 0) {
    std::cout << res.failures << " cell(s) failed; see the error column\n";
    return kExitPartial;
  }
  return kExitOk;
}

int do_figure(const std::string& id, const Options& opt) {
  emit_table(cl::emit_figure_data(id), opt);
  return kExitOk;
}

// Expected supplier payoff under arbitrary terms, used to pick the capacity
// at which the simulation runs.
double expected_supplier_payoff(const cl::MarketParams& p, const cl::DemandModel& d,
                                const cl::ContractTerms& terms, double x) {
  const double w = cl::contract_wholesale(terms);
  double v = cl::supplier_profit(p, d, w, x);
  if (const auto* lump = std::get_if<cl::LumpSumPenalty>(&terms)) v -= lump->rho * d.survival(x);
  if (const auto* unit = std::get_if<cl::UnitPenalty>(&terms))
    v -= unit->rho1 * d.expected_shortfall(x);
  return v;
}

int do_simulate(const std::string& path, const Options& opt) {
  cl::Scenario s = cl::parse_scenario_file(path);
  if (int rc = report_validation(s, opt, true)) return rc;
  if (!s.contract) {
    std::cout << "simulate requires a contract block in the scenario\n";
    return kExitParse;
  }
  if (opt.seed) s.sim.seed = *opt.seed;
  const cl::ContractTerms& terms = *s.contract;
  const double w = cl::contract_wholesale(terms);

  const bool renewal = std::holds_alternative<cl::Renewal>(terms);
  const bool endogenous =
      renewal && std::holds_alternative<cl::Endogenous>(std::get<cl::Renewal>(terms).mode);
  double x = 0.0;
  if (endogenous) {
    x = cl::supplier_best_response_endogenous(s.market, s.demand, w);
  } else if (std::holds_alternative<cl::Wholesale>(terms) || renewal) {
    x = cl::supplier_best_response_wholesale(s.market, s.demand, w);
  } else {
    cl::SolveConfig cfg{0.0, s.demand.base + 50.0 * s.demand.tail_mean(),
                       1e-8 * (s.demand.base + s.demand.tail_mean()), 200};
    x = cl::golden_section_max(
            [&](double cap) { return expected_supplier_payoff(s.market, s.demand, terms, cap); },
            cfg)
            .x_max;
  }
  print_kv("capacity", x);
  print_kv("seed", std::to_string(s.sim.seed));
  print_kv("replications", std::to_string(s.sim.replications));

  cl::CsvTable t;
  t.columns = {"quantity", "closed_form", "mc_mean", "mc_std_error", "z_score"};
  auto add_row = [&](const std::string& name, double closed, const cl::SimEstimate& est) {
    const double z = est.std_error > 0.0 ? (est.mean - closed) / est.std_error : 0.0;
    t.rows.push_back({name, cl::format_cell(closed), cl::format_cell(est.mean),
                      cl::format_cell(est.std_error), cl::format_cell(z)});
  };

  const cl::ProfitEstimates gen = cl::estimate_single_gen_profit(s.market, s.demand, terms, x, s.sim);
  const double w_eff = w;
  double supplier_closed = cl::supplier_profit(s.market, s.demand, w_eff, x);
  double oem_closed = cl::oem_profit(s.market, s.demand, w_eff, x);
  if (const auto* lump = std::get_if<cl::LumpSumPenalty>(&terms)) {
    const double expected_pen = lump->rho * s.demand.survival(x);
    supplier_closed -= expected_pen;
    oem_closed += expected_pen;
  }
  if (const auto* unit = std::get_if<cl::UnitPenalty>(&terms)) {
    const double expected_pen = unit->rho1 * s.demand.expected_shortfall(x);
    supplier_closed -= expected_pen;
    oem_closed += expected_pen;
  }
  add_row("supplier_profit", supplier_closed, gen.supplier);
  add_row("oem_profit", oem_closed, gen.oem);

  if (renewal && endogenous) {
    const cl::RelationshipEstimate rel =
        cl::estimate_relationship_npv(s.market, s.demand, w, x, s.sim);
    add_row("supplier_npv", cl::supplier_npv_endogenous(s.market, s.demand, w, x),
            rel.supplier_npv);
    add_row("expected_generations", 1.0 / s.demand.survival(x), rel.duration);
  }
  if (opt.out.empty()) {
    cl::write_csv(std::cout, t);
  } else {
    cl::write_csv_file(opt.out, t);
    std::cout << "wrote " << t.rows.size() << " rows to " << opt.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"analytics for capacity contracts with stochastic demand"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed_value = 0;
  app.add_option("--out", opt.out, "write CSV output to this path");
  app.add_flag("--strict", opt.strict, "treat validation warnings as errors");
  auto* seed_opt = app.add_option("--seed", seed_value, "override the scenario RNG seed");

  std::string file, figure_id;
  CLI::App* c_check = app.add_subcommand("check", "parse and validate a scenario file");
  c_check->add_option("file", file, "scenario file")->required();
  CLI::App* c_single = app.add_subcommand("single", "single-generation wholesale analysis");
  c_single->add_option("file", file, "scenario file")->required();
  CLI::App* c_penalty = app.add_subcommand("penalty", "coordinating penalty contract");
  c_penalty->add_option("file", file, "scenario file")->required();
  bool prefer_unit = false;
  c_penalty->add_flag("--unit", prefer_unit, "per-unit penalty instead of lump-sum");
  CLI::App* c_renewal = app.add_subcommand("renewal", "contingent-renewal relationship analysis");
  c_renewal->add_option("file", file, "scenario file")->required();
  CLI::App* c_factorial = app.add_subcommand("factorial", "optimal-vs-coordinating study grid");
  CLI::App* c_figure = app.add_subcommand("figure", "emit the data series behind a chart");
  c_figure->add_option("id", figure_id, "figure identifier")->required();
  CLI::App* c_simulate = app.add_subcommand("simulate", "Monte Carlo check of closed forms");
  c_simulate->add_option("file", file, "scenario file")->required();
  // --out/--strict/--seed may appear after the subcommand as well
  for (CLI::App* sc : {c_check, c_single, c_penalty, c_renewal, c_factorial, c_figure, c_simulate})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }
  if (seed_opt->count() > 0) opt.seed = seed_value;

  try {
    if (app.got_subcommand(c_check)) return do_check(file, opt);
    if (app.got_subcommand(c_single)) return do_single(file, opt);
    if (app.got_subcommand(c_penalty)) return do_penalty(file, opt, prefer_unit);
    if (app.got_subcommand(c_renewal)) return do_renewal(file, opt);
    if (app.got_subcommand(c_factorial)) return do_factorial(opt);
    if (app.got_subcommand(c_figure)) return do_figure(figure_id, opt);
    if (app.got_subcommand(c_simulate)) return do_simulate(file, opt);
  } catch (const cl::ParseError& e) {
    std::cerr << "parse error";
    if (e.line > 0) std::cerr << " (line " << e.line << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const cl::UnknownFigure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const cl::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
