#pragma once

#include <string>
#include <vector>

#include "contractlab/csv.hpp"

namespace contractlab {

// Deterministic data series behind each published chart, keyed by id:
//   eff_wholesale    chain efficiency under the OEM-optimal plain wholesale price
//   capacity_compare single-generation vs renewal-contingent capacity response
//   coord_price      coordinating contingent wholesale price vs margin ratio
//   npv_fraction     OEM share of the first-best NPV under coordination
//   erlang_fraction  same share with Erlang tails of increasing shape
//   erlang_delta     same share for Erlang-3 across discount factors
std::vector<std::string> figure_ids();
CsvTable emit_figure_data(const std::string& figure_id);

}  // namespace contractlab
