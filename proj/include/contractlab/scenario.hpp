#pragma once

#include <optional>
#include <string>

#include "contractlab/model.hpp"
#include "contractlab/sim.hpp"

namespace contractlab {

enum class Directive { None, Coordinate, Optimize };

struct Scenario {
  MarketParams market;
  DemandModel demand;
  std::optional<ContractTerms> contract;
  Directive directive = Directive::None;
  SimConfig sim;
};

// Flat "key = value" text with '#' comments.  Demand is assembled from the
// market floor b and rate lambda plus demand.kind / demand.n.
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

// Canonical rendering; parse(render(s)) reproduces s, and rendering is
// idempotent on its own output.
std::string render_scenario(const Scenario& s);

}  // namespace contractlab
