#pragma once

#include "contractlab/model.hpp"

namespace contractlab {

struct RenewalAnalysis {
  double capacity = 0.0;
  double renewal_prob = 0.0;          // chance the relationship survives a generation
  double expected_generations = 1.0;  // geometric mean duration, 1/(1 - renewal_prob)
  double supplier_npv = 0.0;
  double oem_npv = 0.0;
  double chain_npv_first_best = 0.0;
  double oem_fraction = 0.0;          // oem_npv / chain_npv_first_best
};

// Supplier NPV of a repeated relationship at capacity x and wholesale price w
// when each generation renews with probability R(x) = P(D <= x):
// pi_s(x, w) / (1 - delta R(x)), evaluated in the cancellation-safe form
// (1 - delta) + delta P(D > x).
double supplier_npv_endogenous(const MarketParams& p, const DemandModel& d, double w, double x);

// NPVs when renewal happens with a fixed exogenous probability R each
// generation; the supplier's capacity is the single-generation best response.
RenewalAnalysis npv_exogenous(const MarketParams& p, const DemandModel& d, double w, double R);

// Capacity maximizing the supplier's NPV when renewal is contingent on
// covering demand.  Requires w >= c + k.
double supplier_best_response_endogenous(const MarketParams& p, const DemandModel& d, double w);

// Wholesale price at which the endogenous best response equals the first-best
// capacity, so the repeated relationship is fully coordinated.
double coordinating_wholesale(const MarketParams& p, const DemandModel& d);

// Full report under the coordinating contingent wholesale price.
RenewalAnalysis coordinated_renewal_report(const MarketParams& p, const DemandModel& d);

// Limit of the OEM's NPV share under coordination as r/c grows.
double asymptotic_oem_fraction(const MarketParams& p);

struct EndogenousOptimum {
  double w_opt = 0.0;
  RenewalAnalysis analysis;        // at w_opt
  double w_coord = 0.0;
  double oem_profit_opt = 0.0;     // OEM profit per generation at w_opt
  double oem_profit_coord = 0.0;   // OEM profit per generation at w_coord
  double pct_difference = 0.0;     // 100 * (opt - coord) / opt
};

// OEM's profit-maximizing contingent wholesale price, with the coordination
// benchmark alongside.
EndogenousOptimum optimal_wholesale_endogenous(const MarketParams& p, const DemandModel& d);

}  // namespace contractlab
