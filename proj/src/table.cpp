#include "contractlab/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "contractlab/multi_gen.hpp"
#include "contractlab/single_gen.hpp"

namespace contractlab {

namespace {

unsigned thread_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("CONTRACTLAB_THREADS");
  if (!env || !*env) return hw;
  const long v = std::strtol(env, nullptr, 10);
  if (v <= 0) return hw;
  return static_cast<unsigned>(v);
}

FactorialCell run_cell(const ExperimentGrid& g, double rk, double b, double lam, double delta) {
  FactorialCell cell;
  cell.r_minus_k = rk;
  cell.b = b;
  cell.lambda = lam;
  cell.delta = delta;
  try {
    MarketParams p;
    p.r = rk + g.k;
    p.c = g.c;
    p.k = g.k;
    p.b = b;
    p.lambda = lam;
    p.delta = delta;
    const DemandModel d = DemandModel::exponential(b, lam);
    const EndogenousOptimum o = optimal_wholesale_endogenous(p, d);
    cell.w_opt = o.w_opt;
    cell.w_coord = o.w_coord;
    cell.oem_profit_opt = o.oem_profit_opt;
    cell.oem_profit_coord = o.oem_profit_coord;
    cell.pct_difference = o.pct_difference;
    cell.duration_opt = o.analysis.expected_generations;
    cell.duration_coord = rk / g.c;  // closed form at coordination, exact
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

AxisSummary summarize(const std::string& axis, double value,
                      const std::vector<const FactorialCell*>& cells) {
  AxisSummary s;
  s.axis = axis;
  s.value = value;
  s.pct_max = -std::numeric_limits<double>::infinity();
  s.pct_min = std::numeric_limits<double>::infinity();
  for (const FactorialCell* c : cells) {
    if (!c->error.empty()) continue;
    ++s.cells;
    s.profit_opt_mean += c->oem_profit_opt;
    s.profit_coord_mean += c->oem_profit_coord;
    s.pct_mean += c->pct_difference;
    s.pct_max = std::max(s.pct_max, c->pct_difference);
    s.pct_min = std::min(s.pct_min, c->pct_difference);
    s.duration_opt_mean += c->duration_opt;
    s.duration_coord_mean += c->duration_coord;
  }
  if (s.cells > 0) {
    s.profit_opt_mean /= s.cells;
    s.profit_coord_mean /= s.cells;
    s.pct_mean /= s.cells;
    s.duration_opt_mean /= s.cells;
    s.duration_coord_mean /= s.cells;
  } else {
    s.pct_max = s.pct_min = 0.0;
  }
  return s;
}

}  // namespace

FactorialResult run_factorial(const ExperimentGrid& grid) {
  const std::size_t total =
      grid.r_minus_k.size() * grid.b.size() * grid.lambda.size() * grid.delta.size();
  if (total == 0) throw DomainError("factorial grid is empty");
  if (total > 100000) throw DomainError("factorial grid exceeds the 1e5 cell cap");

  struct Point {
    double rk, b, lam, delta;
  };
  std::vector<Point> points;
  points.reserve(total);
  for (double rk : grid.r_minus_k)
    for (double b : grid.b)
      for (double lam : grid.lambda)
        for (double delta : grid.delta) points.push_back({rk, b, lam, delta});

  FactorialResult out;
  out.cells.resize(total);
  const unsigned workers = std::min<std::size_t>(thread_count(), total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) {
      const Point& pt = points[i];
      out.cells[i] = run_cell(grid, pt.rk, pt.b, pt.lam, pt.delta);
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t]() {
        for (std::size_t i = t; i < total; i += workers) {
          const Point& pt = points[i];
          out.cells[i] = run_cell(grid, pt.rk, pt.b, pt.lam, pt.delta);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& c : out.cells)
    if (!c.error.empty()) ++out.failures;

  auto add_axis = [&](const std::string& axis, const std::vector<double>& levels,
                      double FactorialCell::*field) {
    for (double level : levels) {
      std::vector<const FactorialCell*> sel;
      for (const auto& c : out.cells)
        if (c.*field == level) sel.push_back(&c);
      out.summary.push_back(summarize(axis, level, sel));
    }
  };
  add_axis("r_minus_k", grid.r_minus_k, &FactorialCell::r_minus_k);
  add_axis("delta", grid.delta, &FactorialCell::delta);
  add_axis("b", grid.b, &FactorialCell::b);
  add_axis("lambda", grid.lambda, &FactorialCell::lambda);
  {
    std::vector<const FactorialCell*> all;
    for (const auto& c : out.cells) all.push_back(&c);
    out.summary.push_back(summarize("overall", 0.0, all));
  }
  return out;
}

CsvTable factorial_cells_csv(const FactorialResult& r) {
  CsvTable t;
  t.columns = {"r_minus_k",       "b",          "lambda",           "delta",
               "w_opt",           "w_coord",    "oem_profit_opt",   "oem_profit_coord",
               "pct_difference",  "duration_opt", "duration_coord", "error"};
  for (const auto& c : r.cells) {
    if (c.error.empty()) {
      t.rows.push_back({format_cell(c.r_minus_k), format_cell(c.b), format_cell(c.lambda),
                        format_cell(c.delta), format_cell(c.w_opt), format_cell(c.w_coord),
                        format_cell(c.oem_profit_opt), format_cell(c.oem_profit_coord),
                        format_cell(c.pct_difference), format_cell(c.duration_opt),
                        format_cell(c.duration_coord), ""});
    } else {
      t.rows.push_back({format_cell(c.r_minus_k), format_cell(c.b), format_cell(c.lambda),
                        format_cell(c.delta), "", "", "", "", "", "", "", c.error});
    }
  }
  return t;
}

CsvTable factorial_summary_csv(const FactorialResult& r) {
  CsvTable t;
  t.columns = {"axis",     "value",    "cells",         "profit_opt_mean", "profit_coord_mean",
               "pct_mean", "pct_max",  "pct_min",       "duration_opt_mean",
               "duration_coord_mean"};
  for (const auto& s : r.summary) {
    t.rows.push_back({s.axis, s.axis == "overall" ? "" : format_cell(s.value),
                      std::to_string(s.cells), format_cell(s.profit_opt_mean),
                      format_cell(s.profit_coord_mean), format_cell(s.pct_mean),
                      format_cell(s.pct_max), format_cell(s.pct_min),
                      format_cell(s.duration_opt_mean), format_cell(s.duration_coord_mean)});
  }
  return t;
}

}  // namespace contractlab
