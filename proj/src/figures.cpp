#include "contractlab/figures.hpp"

#include <cmath>

#include "contractlab/multi_gen.hpp"
#include "contractlab/single_gen.hpp"

namespace contractlab {

namespace {

std::vector<double> linspace_step(double lo, double hi, double step) {
  std::vector<double> out;
  for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
  return out;
}

MarketParams base_market(double margin, double b, double lambda, double delta) {
  MarketParams p;
  p.r = margin;  // c = 1, k = 0 throughout the chart family
  p.c = 1.0;
  p.k = 0.0;
  p.b = b;
  p.lambda = lambda;
  p.delta = delta;
  return p;
}

CsvTable fig_eff_wholesale() {
  CsvTable t;
  t.columns = {"margin_ratio", "tail_mean_1", "tail_mean_2", "tail_mean_10"};
  const double lambdas[] = {1.0, 0.5, 0.1};
  for (double ratio : linspace_step(2.0, 50.0, 0.5)) {
    std::vector<std::string> row{format_cell(ratio)};
    for (double lam : lambdas) {
      MarketParams p = base_market(ratio, 1.0, lam, 0.9);
      const DemandModel d = DemandModel::exponential(p.b, lam);
      row.push_back(format_cell(oem_optimal_wholesale(p, d).report.efficiency));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable fig_capacity_compare() {
  CsvTable t;
  t.columns = {"w", "exogenous", "endogenous"};
  MarketParams p = base_market(10.0, 1.0, 1.0, 0.9);
  const DemandModel d = DemandModel::exponential(p.b, p.lambda);
  for (double w : linspace_step(1.0, 10.0, 0.1)) {
    t.rows.push_back({format_cell(w),
                      format_cell(supplier_best_response_wholesale(p, d, w)),
                      format_cell(supplier_best_response_endogenous(p, d, w))});
  }
  return t;
}

CsvTable fig_coord_price() {
  CsvTable t;
  t.columns = {"margin_ratio", "delta_0.3", "delta_0.6", "delta_0.9"};
  const double deltas[] = {0.3, 0.6, 0.9};
  for (double ratio : linspace_step(2.0, 50.0, 0.5)) {
    std::vector<std::string> row{format_cell(ratio)};
    for (double delta : deltas) {
      MarketParams p = base_market(ratio, 1.0, 1.0, delta);
      const DemandModel d = DemandModel::exponential(p.b, p.lambda);
      row.push_back(format_cell(coordinating_wholesale(p, d)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable fig_npv_fraction() {
  CsvTable t;
  t.columns = {"margin_ratio", "b_0", "b_1", "b_5"};
  const double floors[] = {0.0, 1.0, 5.0};
  for (double ratio : linspace_step(2.0, 50.0, 0.5)) {
    std::vector<std::string> row{format_cell(ratio)};
    for (double b : floors) {
      MarketParams p = base_market(ratio, b, 1.0, 0.9);
      const DemandModel d = DemandModel::exponential(b, 1.0);
      row.push_back(format_cell(coordinated_renewal_report(p, d).oem_fraction));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable fig_erlang_fraction() {
  CsvTable t;
  t.columns = {"margin_ratio"};
  const double floors[] = {0.0, 1.0, 5.0};
  const int shapes[] = {1, 2, 3};
  for (double b : floors)
    for (int n : shapes)
      t.columns.push_back("b" + format_cell(b) + "_n" + std::to_string(n));
  for (double ratio : linspace_step(2.0, 50.0, 1.0)) {
    std::vector<std::string> row{format_cell(ratio)};
    for (double b : floors) {
      for (int n : shapes) {
        MarketParams p = base_market(ratio, b, 1.0, 0.9);
        const DemandModel d = DemandModel::erlang(b, 1.0, n);
        row.push_back(format_cell(coordinated_renewal_report(p, d).oem_fraction));
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable fig_erlang_delta() {
  CsvTable t;
  t.columns = {"margin_ratio", "delta_0.85", "delta_0.9", "delta_0.95"};
  const double deltas[] = {0.85, 0.9, 0.95};
  for (double ratio : linspace_step(2.0, 50.0, 1.0)) {
    std::vector<std::string> row{format_cell(ratio)};
    for (double delta : deltas) {
      MarketParams p = base_market(ratio, 1.0, 1.0, delta);
      const DemandModel d = DemandModel::erlang(1.0, 1.0, 3);
      row.push_back(format_cell(coordinated_renewal_report(p, d).oem_fraction));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"eff_wholesale", "capacity_compare", "coord_price",
          "npv_fraction",  "erlang_fraction",  "erlang_delta"};
}

CsvTable emit_figure_data(const std::string& figure_id) {
  if (figure_id == "eff_wholesale") return fig_eff_wholesale();
  if (figure_id == "capacity_compare") return fig_capacity_compare();
  if (figure_id == "coord_price") return fig_coord_price();
  if (figure_id == "npv_fraction") return fig_npv_fraction();
  if (figure_id == "erlang_fraction") return fig_erlang_fraction();
  if (figure_id == "erlang_delta") return fig_erlang_delta();
  std::string known;
  for (const auto& id : figure_ids()) known += (known.empty() ? "" : ", ") + id;
  throw UnknownFigure("unknown figure id '" + figure_id + "' (known: " + known + ")");
}

}  // namespace contractlab
