#pragma once

#include "contractlab/model.hpp"

namespace contractlab {

struct CentralizedSolution {
  double x_star = 0.0;   // first-best capacity
  double pi_star = 0.0;  // first-best chain profit
};

// Integrated-chain optimum: maximize (r-k) E[min(D,x)] - c x.
CentralizedSolution centralized_optimum(const MarketParams& p, const DemandModel& d);

// Supplier capacity choice under a plain wholesale price w (zero below c+k).
double supplier_best_response_wholesale(const MarketParams& p, const DemandModel& d, double w);

double supplier_profit(const MarketParams& p, const DemandModel& d, double w, double x);
double oem_profit(const MarketParams& p, const DemandModel& d, double w, double x);

struct WholesaleSolution {
  double w_tilde = 0.0;
  OutcomeReport report;
};

// OEM's profit-maximizing wholesale price given the supplier's best response.
WholesaleSolution oem_optimal_wholesale(const MarketParams& p, const DemandModel& d);

enum class PenaltyKind { LumpSum, PerUnit };

struct Enforceability {
  double best_case_profit = 0.0;          // (w_hat - k - c) * capacity, zero-shortfall payoff
  double shortfall_probability = 0.0;     // P(D > capacity)
  double penalty_to_best_case_ratio = 0.0;
  double penalty_to_wholesale_ratio = 0.0;
};

struct PenaltyContractSolution {
  PenaltyKind kind = PenaltyKind::LumpSum;
  double w_hat = 0.0;
  double penalty = 0.0;  // lump-sum rho, or per-unit rho1
  double capacity = 0.0;
  double supplier_profit = 0.0;
  double oem_profit = 0.0;
  Enforceability enforceability;
};

// Wholesale price plus lump-sum shortfall penalty that induces first-best
// capacity and holds the supplier to the reservation profit (exponential tail;
// Erlang tails are routed through the numeric solver).
PenaltyContractSolution coordinated_lump_sum(const MarketParams& p, const DemandModel& d);

// Per-unit shortfall penalty variant (exponential tail only).
PenaltyContractSolution coordinated_unit_penalty(const MarketParams& p, const DemandModel& d);

// Numeric lump-sum coordination for a general (Erlang) tail: first-best
// capacity by golden section, then bisection on the wholesale price with the
// penalty eliminated through the supplier's first-order condition.
PenaltyContractSolution coordinated_penalty_numeric(const MarketParams& p, const DemandModel& d);

// Smallest plain wholesale price whose induced supplier profit reaches the
// reservation level.  May exceed r; the caller decides what that means.
double min_wholesale_for_reservation(const MarketParams& p);

}  // namespace contractlab
