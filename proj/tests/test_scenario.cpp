#include <cstdlib>
#include <sstream>

#include "contractlab/figures.hpp"
#include "contractlab/scenario.hpp"
#include "contractlab/table.hpp"
#include "doctest.h"

using namespace contractlab;

namespace {

double cell(const CsvTable& t, std::size_t row, std::size_t col) {
  return std::strtod(t.rows.at(row).at(col).c_str(), nullptr);
}

std::string to_text(const CsvTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

TEST_CASE("numeric cells render at 12 significant digits and round trip") {
  CHECK(format_cell(1.0) == "1");
  CHECK(format_cell(0.5) == "0.5");
  CHECK(format_cell(1e7) == "10000000");
  CHECK(format_cell(1438948298.14) == "1438948298.14");
  CHECK(format_cell(-2.5e-7) == "-2.5e-07");
  for (double v : {3.14159265358979, 959298865.427, 1e-12, 7.0 / 3.0, 0.0}) {
    const double back = std::strtod(format_cell(v).c_str(), nullptr);
    CHECK(back == doctest::Approx(v).epsilon(1e-11));
  }
}

TEST_CASE("CSV write / read round trip") {
  CsvTable t;
  t.columns = {"a", "b", "c"};
  t.rows = {{"1", "2.5", "x"}, {format_cell(1.0 / 3.0), "-4", ""}};
  std::ostringstream os;
  write_csv(os, t);
  std::istringstream is(os.str());
  const CsvTable u = read_csv(is);
  CHECK(u.columns == t.columns);
  CHECK(u.rows == t.rows);
}

TEST_CASE("scenario parsing: minimal file and defaults") {
  const Scenario s = parse_scenario_text(
      "# basic wholesale setting\n"
      "r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\n");
  CHECK(s.market.r == 10.0);
  CHECK(s.market.reservation == 0.0);
  CHECK_FALSE(s.market.delta.has_value());
  CHECK(s.demand.kind == TailKind::Exponential);
  CHECK(s.demand.base == 1.0);
  CHECK_FALSE(s.contract.has_value());
  CHECK(s.directive == Directive::None);
  CHECK(s.sim.replications == SimConfig{}.replications);
}

TEST_CASE("scenario parsing: full contingent-renewal configuration") {
  const Scenario s = parse_scenario_text(
      "r = 11\nc = 1\nk = 0\nb = 1\nlambda = 1\ndelta = 0.9\n"
      "demand.kind = erlang\ndemand.n = 3\n"
      "contract.kind = renewal\ncontract.w = 2.5\ncontract.mode = exogenous\ncontract.R = 0.8\n"
      "sim.seed = 42\nsim.replications = 1000\nsim.horizon_cap = 30\n");
  CHECK(s.market.delta == 0.9);
  CHECK(s.demand.kind == TailKind::Erlang);
  CHECK(s.demand.n == 3);
  REQUIRE(s.contract.has_value());
  const auto* ren = std::get_if<Renewal>(&*s.contract);
  REQUIRE(ren != nullptr);
  CHECK(ren->w == 2.5);
  const auto* ex = std::get_if<ExogenousProb>(&ren->mode);
  REQUIRE(ex != nullptr);
  CHECK(ex->R == 0.8);
  CHECK(s.sim.seed == 42);
  CHECK(s.sim.replications == 1000);
  CHECK(s.sim.horizon_cap == 30);
}

TEST_CASE("scenario parsing: penalty contracts") {
  const Scenario lump = parse_scenario_text(
      "r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\n"
      "contract.kind = lump_sum\ncontract.w = 2\ncontract.rho = 40\n");
  const auto* l = std::get_if<LumpSumPenalty>(&*lump.contract);
  REQUIRE(l != nullptr);
  CHECK(l->rho == 40.0);
  const Scenario unit = parse_scenario_text(
      "r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\n"
      "contract.kind = unit_penalty\ncontract.w = 2\ncontract.rho1 = 8\n");
  const auto* u = std::get_if<UnitPenalty>(&*unit.contract);
  REQUIRE(u != nullptr);
  CHECK(u->rho1 == 8.0);
}

TEST_CASE("scenario parsing rejects malformed input with line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_scenario_text(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("r = 10\nnot a pair\n") == 2);
  CHECK(line_of("r = 10\nr = 11\n") == 2);
  CHECK(line_of("r = \n") == 1);
  CHECK(line_of("mystery = 3\n") == 1);
  CHECK(line_of("r = ten\n") == 1);
  CHECK_THROWS_AS(parse_scenario_text(""), ParseError);  // missing required keys
  CHECK_THROWS_AS(parse_scenario_text("r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\ndemand.n = 2\n"),
                  ParseError);  // exponential tails have no shape to set
  CHECK_THROWS_AS(parse_scenario_text("r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\ncontract.w = 2\n"),
                  ParseError);  // contract field without contract.kind
  CHECK_THROWS_AS(
      parse_scenario_text("r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\ndirective = maximize\n"),
      ParseError);
  CHECK_THROWS_AS(parse_scenario_text("r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\n"
                                      "contract.kind = lump_sum\ncontract.w = 2\n"),
                  ParseError);  // lump_sum needs contract.rho
  CHECK_THROWS_AS(parse_scenario_text("r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\n"
                                      "sim.replications = 0\n"),
                  ParseError);
}

TEST_CASE("scenario render / parse round trip is lossless and idempotent") {
  const char* texts[] = {
      "r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\n",
      "r = 11\nc = 1\nk = 0.5\nb = 2\nlambda = 0.5\ndelta = 0.9\nreservation = 3\n"
      "demand.kind = erlang\ndemand.n = 2\ncontract.kind = renewal\ncontract.w = 2.5\n"
      "contract.mode = exogenous\ncontract.R = 0.8\nsim.seed = 7\nsim.replications = 500\n",
      "r = 1e7\nc = 1e5\nk = 0\nb = 50\nlambda = 0.01\n"
      "contract.kind = lump_sum\ncontract.w = 407011.345733\ncontract.rho = 959298865.427\n",
      "r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\ndelta = 0.9\ndirective = optimize\n"
      "contract.kind = renewal\ncontract.w = 2\nsim.horizon_cap = 40\n",
      "r = 10\nc = 1\nk = 0\nb = 0\nlambda = 0.2\ndirective = coordinate\n"
      "contract.kind = unit_penalty\ncontract.w = 2\ncontract.rho1 = 8\n",
  };
  for (const char* text : texts) {
    const Scenario s = parse_scenario_text(text);
    const std::string first = render_scenario(s);
    const Scenario t = parse_scenario_text(first);
    CHECK(render_scenario(t) == first);
    CHECK(t.market.r == s.market.r);
    CHECK(t.market.reservation == s.market.reservation);
    CHECK(t.market.delta == s.market.delta);
    CHECK(t.demand.kind == s.demand.kind);
    CHECK(t.demand.n == s.demand.n);
    CHECK(t.contract.has_value() == s.contract.has_value());
    if (s.contract) CHECK(t.contract->index() == s.contract->index());
    CHECK(t.directive == s.directive);
    CHECK(t.sim.seed == s.sim.seed);
    CHECK(t.sim.replications == s.sim.replications);
    CHECK(t.sim.horizon_cap == s.sim.horizon_cap);
  }
}

TEST_CASE("figure ids are stable and unknown ids name the alternatives") {
  const auto ids = figure_ids();
  CHECK(ids.size() == 6);
  try {
    emit_figure_data("histogram");
    CHECK(false);
  } catch (const UnknownFigure& e) {
    const std::string msg = e.what();
    CHECK(msg.find("histogram") != std::string::npos);
    CHECK(msg.find("eff_wholesale") != std::string::npos);
  }
}

TEST_CASE("wholesale efficiency figure: below one, ordered by tail mean") {
  const CsvTable t = emit_figure_data("eff_wholesale");
  CHECK(t.columns ==
        std::vector<std::string>{"margin_ratio", "tail_mean_1", "tail_mean_2", "tail_mean_10"});
  CHECK(t.rows.size() == 97);  // ratio 2..50 step 0.5
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t jcol = 1; jcol < 4; ++jcol) {
      const double eff = cell(t, i, jcol);
      CHECK(eff > 0.0);
      CHECK(eff < 1.0);
    }
    if (cell(t, i, 0) >= 3.0) {
      // longer uncertain tails hurt: efficiency falls with the tail mean
      CHECK(cell(t, i, 1) > cell(t, i, 2));
      CHECK(cell(t, i, 2) > cell(t, i, 3));
    }
  }
  const std::size_t last = t.rows.size() - 1;
  CHECK(cell(t, last, 0) == 50.0);
  CHECK(cell(t, last, 3) == doctest::Approx(0.911728136248).epsilon(1e-9));
  CHECK(cell(t, 0, 1) == doctest::Approx(0.765197109517).epsilon(1e-6));
}

TEST_CASE("capacity comparison figure: renewal response dominates") {
  const CsvTable t = emit_figure_data("capacity_compare");
  CHECK(t.columns == std::vector<std::string>{"w", "exogenous", "endogenous"});
  CHECK(t.rows.size() == 91);  // w 1..10 step 0.1
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(cell(t, i, 2) >= cell(t, i, 1) - 1e-9);
    if (cell(t, i, 0) >= 1.2) CHECK(cell(t, i, 2) > cell(t, i, 1));
  }
}

TEST_CASE("coordinating price figure: decreasing in the discount factor") {
  const CsvTable t = emit_figure_data("coord_price");
  CHECK(t.rows.size() == 97);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(cell(t, i, 1) > cell(t, i, 2));
    CHECK(cell(t, i, 2) > cell(t, i, 3));
  }
}

TEST_CASE("NPV fraction figure: increasing in margin and in base demand") {
  const CsvTable t = emit_figure_data("npv_fraction");
  CHECK(t.columns == std::vector<std::string>{"margin_ratio", "b_0", "b_1", "b_5"});
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(cell(t, i, 1) < cell(t, i, 2));
    CHECK(cell(t, i, 2) < cell(t, i, 3));
    if (i > 0)
      for (std::size_t jcol = 1; jcol < 4; ++jcol)
        CHECK(cell(t, i, jcol) > cell(t, i - 1, jcol));
  }
  // with no advance orders the share approaches the discount factor
  const std::size_t last = t.rows.size() - 1;
  CHECK(std::abs(cell(t, last, 1) - 0.9) < 0.02);
  CHECK(std::abs(cell(t, last, 1) - 0.9) < std::abs(cell(t, 0, 1) - 0.9));
}

TEST_CASE("Erlang fraction figures have the advertised shape") {
  const CsvTable t = emit_figure_data("erlang_fraction");
  REQUIRE(t.columns.size() == 10);
  CHECK(t.columns[1] == "b0_n1");
  CHECK(t.columns[9] == "b5_n3");
  CHECK(t.rows.size() == 49);  // ratio 2..50 step 1
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t jcol = 1; jcol < t.columns.size(); ++jcol) {
      CHECK(cell(t, i, jcol) > 0.0);
      CHECK(cell(t, i, jcol) < 1.0);
    }

  const CsvTable u = emit_figure_data("erlang_delta");
  CHECK(u.rows.size() == 49);
  for (std::size_t i = 0; i < u.rows.size(); ++i) {
    CHECK(cell(u, i, 1) < cell(u, i, 2));  // share grows with patience
    CHECK(cell(u, i, 2) < cell(u, i, 3));
  }
}

TEST_CASE("figure emission is deterministic") {
  CHECK(to_text(emit_figure_data("eff_wholesale")) == to_text(emit_figure_data("eff_wholesale")));
  CHECK(to_text(emit_figure_data("npv_fraction")) == to_text(emit_figure_data("npv_fraction")));
}

TEST_CASE("factorial study reproduces the published summary statistics") {
  const FactorialResult r = run_factorial();
  REQUIRE(r.cells.size() == 54);
  CHECK(r.failures == 0);

  const AxisSummary* overall = nullptr;
  for (const auto& s : r.summary)
    if (s.axis == "overall") overall = &s;
  REQUIRE(overall != nullptr);
  CHECK(overall->cells == 54);
  CHECK(std::abs(overall->pct_mean - 5.31) <= 0.01);
  CHECK(std::abs(overall->pct_max - 11.89) <= 0.01);
  CHECK(std::abs(overall->pct_min - 0.90) <= 0.01);
  CHECK(overall->duration_coord_mean == doctest::Approx(35.0 / 3.0).epsilon(1e-12));

  auto axis_pct = [&](const std::string& axis, double value) {
    for (const auto& s : r.summary)
      if (s.axis == axis && s.value == value) return s.pct_mean;
    REQUIRE(false);
    return 0.0;
  };
  CHECK(std::abs(axis_pct("r_minus_k", 5.0) - 6.81) <= 0.01);
  CHECK(std::abs(axis_pct("r_minus_k", 10.0) - 4.67) <= 0.01);
  CHECK(std::abs(axis_pct("r_minus_k", 20.0) - 4.46) <= 0.01);
  CHECK(std::abs(axis_pct("delta", 0.85) - 8.15) <= 0.01);
  CHECK(std::abs(axis_pct("delta", 0.9) - 5.16) <= 0.01);
  CHECK(std::abs(axis_pct("delta", 0.95) - 2.62) <= 0.01);
  CHECK(std::abs(axis_pct("b", 0.0) - 6.52) <= 0.01);
  CHECK(std::abs(axis_pct("b", 1.0) - 4.11) <= 0.01);
  CHECK(std::abs(axis_pct("lambda", 0.1) - 6.12) <= 0.01);
  CHECK(std::abs(axis_pct("lambda", 0.5) - 5.19) <= 0.01);
  CHECK(std::abs(axis_pct("lambda", 1.0) - 4.63) <= 0.01);

  // coordinated durations are the margin ratio, exactly
  for (const auto& c : r.cells) {
    CHECK(c.duration_coord == c.r_minus_k);
    CHECK(c.pct_difference > 0.0);
    CHECK(c.duration_opt < c.duration_coord);
  }

  const CsvTable cells = factorial_cells_csv(r);
  CHECK(cells.columns.size() == 12);
  CHECK(cells.rows.size() == 54);
  const CsvTable summary = factorial_summary_csv(r);
  CHECK(summary.rows.size() == 12);  // 3 + 3 + 2 + 3 axis rows + overall
}

TEST_CASE("factorial per-axis profit means match the published table") {
  const FactorialResult r = run_factorial();
  auto axis = [&](const std::string& name, double value) -> const AxisSummary& {
    for (const auto& s : r.summary)
      if (s.axis == name && s.value == value) return s;
    REQUIRE(false);
    return r.summary.front();
  };
  CHECK(std::abs(axis("r_minus_k", 5.0).profit_opt_mean - 9.98) <= 0.01);
  CHECK(std::abs(axis("r_minus_k", 5.0).profit_coord_mean - 9.27) <= 0.01);
  CHECK(std::abs(axis("lambda", 1.0).profit_opt_mean - 12.56) <= 0.01);
  CHECK(std::abs(axis("lambda", 1.0).profit_coord_mean - 12.12) <= 0.01);
}

TEST_CASE("one-cell factorial grid: summary equals the row") {
  ExperimentGrid g;
  g.r_minus_k = {10.0};
  g.b = {1.0};
  g.lambda = {1.0};
  g.delta = {0.9};
  const FactorialResult r = run_factorial(g);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.failures == 0);
  for (const auto& s : r.summary) {
    CHECK(s.cells == 1);
    CHECK(s.pct_mean == r.cells[0].pct_difference);
    CHECK(s.pct_max == r.cells[0].pct_difference);
    CHECK(s.profit_opt_mean == r.cells[0].oem_profit_opt);
  }
  CHECK(std::abs(r.cells[0].w_opt - 2.06457442745) <= 1e-5);
  CHECK(std::abs(r.cells[0].pct_difference - 2.33597006213) <= 1e-4);
}

TEST_CASE("failing cells are recorded without stopping the run") {
  ExperimentGrid g;
  g.r_minus_k = {0.5, 10.0};  // 0.5 leaves no viable margin at c = 1
  g.b = {1.0};
  g.lambda = {1.0};
  g.delta = {0.9};
  const FactorialResult r = run_factorial(g);
  REQUIRE(r.cells.size() == 2);
  CHECK(r.failures == 1);
  CHECK_FALSE(r.cells[0].error.empty());
  CHECK(r.cells[1].error.empty());
  CHECK(r.cells[1].w_opt > 0.0);
  const CsvTable csv = factorial_cells_csv(r);
  CHECK(csv.rows[0].back() == r.cells[0].error);
  CHECK(csv.rows[1].back().empty());
}

TEST_CASE("factorial grid size limits") {
  ExperimentGrid empty;
  empty.r_minus_k.clear();
  CHECK_THROWS_AS(run_factorial(empty), DomainError);
  ExperimentGrid big;
  big.r_minus_k.assign(101, 10.0);
  big.b.assign(100, 1.0);
  big.lambda.assign(10, 1.0);
  big.delta.assign(1, 0.9);
  CHECK_THROWS_AS(run_factorial(big), DomainError);
}

TEST_CASE("factorial output is independent of the thread count") {
  ExperimentGrid g;
  g.r_minus_k = {5.0, 10.0};
  g.b = {0.0, 1.0};
  g.lambda = {0.5, 1.0};
  g.delta = {0.9};
  setenv("CONTRACTLAB_THREADS", "1", 1);
  const std::string serial = to_text(factorial_cells_csv(run_factorial(g)));
  setenv("CONTRACTLAB_THREADS", "4", 1);
  const std::string parallel = to_text(factorial_cells_csv(run_factorial(g)));
  unsetenv("CONTRACTLAB_THREADS");
  CHECK(serial == parallel);
}
