#pragma once

#include <string>
#include <vector>

#include "contractlab/csv.hpp"

namespace contractlab {

// Full-factorial comparison of the OEM-optimal vs the coordinating contingent
// wholesale price.  Defaults reproduce the published study design (c = 1,
// k = 0, exponential tail).
struct ExperimentGrid {
  std::vector<double> r_minus_k{5.0, 10.0, 20.0};
  std::vector<double> b{0.0, 1.0};
  std::vector<double> lambda{0.1, 0.5, 1.0};
  std::vector<double> delta{0.85, 0.9, 0.95};
  double c = 1.0;
  double k = 0.0;
};

struct FactorialCell {
  double r_minus_k = 0, b = 0, lambda = 0, delta = 0;
  double w_opt = 0, w_coord = 0;
  double oem_profit_opt = 0, oem_profit_coord = 0;
  double pct_difference = 0;  // 100 * (opt - coord) / opt
  double duration_opt = 0, duration_coord = 0;
  std::string error;  // empty on success; failed cells do not stop the run
};

struct AxisSummary {
  std::string axis;  // one of the four factor names, or "overall"
  double value = 0;  // factor level; unused for "overall"
  int cells = 0;
  double profit_opt_mean = 0, profit_coord_mean = 0;
  double pct_mean = 0, pct_max = 0, pct_min = 0;
  double duration_opt_mean = 0, duration_coord_mean = 0;
};

struct FactorialResult {
  std::vector<FactorialCell> cells;
  std::vector<AxisSummary> summary;
  int failures = 0;
};

// Threads from CONTRACTLAB_THREADS (0 or unset: all hardware threads).
// Cell order and output are independent of the thread count.
FactorialResult run_factorial(const ExperimentGrid& grid = {});

CsvTable factorial_cells_csv(const FactorialResult& r);
CsvTable factorial_summary_csv(const FactorialResult& r);

}  // namespace contractlab
