#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "contractlab/errors.hpp"

namespace contractlab {

// Economic primitives: unit revenue r, capacity cost c, unit production cost k,
// deterministic demand floor b, tail rate lambda, per-generation discount
// factor delta (only needed by multi-generation analyses), and the supplier's
// reservation profit.
struct MarketParams {
  double r = 0.0;
  double c = 0.0;
  double k = 0.0;
  double b = 0.0;
  double lambda = 0.0;
  std::optional<double> delta;
  double reservation = 0.0;

  double require_delta() const {
    if (!delta) throw DomainError("delta is required for multi-generation analysis");
    return *delta;
  }
};

enum class TailKind { Exponential, Erlang };

// Demand D = base + A with A exponential(lambda) or Erlang(lambda, n).
struct DemandModel {
  double base = 0.0;
  TailKind kind = TailKind::Exponential;
  double lambda = 1.0;
  int n = 1;

  static DemandModel exponential(double base, double lambda);
  static DemandModel erlang(double base, double lambda, int n);

  double tail_mean() const;                   // E[A]
  double mean() const;                        // E[D]
  double tail_survival(double y) const;       // P(A > y)
  double tail_density(double y) const;        // density of A
  double survival(double x) const;            // P(D > x)
  double expected_sales(double x) const;      // E[min(D, x)]
  double expected_shortfall(double x) const;  // E[(D - x)+]
};

struct Wholesale {
  double w = 0.0;
};
struct LumpSumPenalty {
  double w = 0.0;
  double rho = 0.0;
};
struct UnitPenalty {
  double w = 0.0;
  double rho1 = 0.0;
};
struct ExogenousProb {
  double R = 0.0;
};
struct Endogenous {};
using RenewalMode = std::variant<ExogenousProb, Endogenous>;
struct Renewal {
  double w = 0.0;
  RenewalMode mode = Endogenous{};
};
using ContractTerms = std::variant<Wholesale, LumpSumPenalty, UnitPenalty, Renewal>;

double contract_wholesale(const ContractTerms& terms);

struct OutcomeReport {
  double capacity = 0.0;
  double supplier_profit = 0.0;
  double oem_profit = 0.0;
  double chain_profit = 0.0;
  double first_best_profit = 0.0;
  double efficiency = 0.0;
  std::optional<double> supplier_npv;
  std::optional<double> oem_npv;
  std::optional<double> chain_npv;
  std::optional<double> oem_fraction;
  std::optional<double> expected_duration;
  std::vector<std::string> annotations;
};

struct ValidationIssue {
  std::string constraint;
  std::string message;
};

struct ValidationResult {
  std::vector<ValidationIssue> warnings;
  std::vector<ValidationIssue> fatal;
  bool usable() const { return fatal.empty(); }
  bool clean() const { return fatal.empty() && warnings.empty(); }
};

ValidationResult validate_params(const MarketParams& p);
ValidationResult validate(const MarketParams& p, const DemandModel& d);

}  // namespace contractlab
