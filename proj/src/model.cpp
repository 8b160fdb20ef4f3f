#include "contractlab/model.hpp"

#include <cmath>

#include "contractlab/special_fn.hpp"

namespace contractlab {

DemandModel DemandModel::exponential(double base, double lambda) {
  if (!(base >= 0.0)) throw DomainError("demand base must be >= 0");
  if (!(lambda > 0.0)) throw DomainError("demand rate must be > 0");
  DemandModel d;
  d.base = base;
  d.kind = TailKind::Exponential;
  d.lambda = lambda;
  d.n = 1;
  return d;
}

DemandModel DemandModel::erlang(double base, double lambda, int n) {
  if (!(base >= 0.0)) throw DomainError("demand base must be >= 0");
  if (!(lambda > 0.0)) throw DomainError("demand rate must be > 0");
  if (n < 1) throw DomainError("Erlang shape must be >= 1");
  DemandModel d;
  d.base = base;
  d.kind = TailKind::Erlang;
  d.lambda = lambda;
  d.n = n;
  return d;
}

double DemandModel::tail_mean() const {
  return (kind == TailKind::Exponential ? 1.0 : static_cast<double>(n)) / lambda;
}

double DemandModel::mean() const { return base + tail_mean(); }

double DemandModel::tail_survival(double y) const {
  if (y <= 0.0) return 1.0;
  if (kind == TailKind::Exponential) return std::exp(-lambda * y);
  return reg_upper_gamma_int(n, lambda * y);
}

double DemandModel::tail_density(double y) const {
  if (y < 0.0) return 0.0;
  if (kind == TailKind::Exponential) return lambda * std::exp(-lambda * y);
  const double z = lambda * y;
  if (z == 0.0) return n == 1 ? lambda : 0.0;
  return lambda * std::exp((n - 1) * std::log(z) - z - std::lgamma(static_cast<double>(n)));
}

double DemandModel::survival(double x) const { return tail_survival(x - base); }

double DemandModel::expected_sales(double x) const {
  if (x <= base) return x;
  const double y = x - base;
  if (kind == TailKind::Exponential) return base - std::expm1(-lambda * y) / lambda;
  const double z = lambda * y;
  return base + (static_cast<double>(n) / lambda) * reg_lower_gamma_int(n + 1, z) +
         y * reg_upper_gamma_int(n, z);
}

double DemandModel::expected_shortfall(double x) const { return mean() - expected_sales(x); }

double contract_wholesale(const ContractTerms& terms) {
  return std::visit([](const auto& t) { return t.w; }, terms);
}

ValidationResult validate_params(const MarketParams& p) {
  ValidationResult v;
  auto fatal = [&](const char* cons, const std::string& msg) { v.fatal.push_back({cons, msg}); };
  auto warn = [&](const char* cons, const std::string& msg) { v.warnings.push_back({cons, msg}); };

  if (!(p.r > 0.0)) fatal("r > 0", "unit revenue must be positive");
  if (!(p.c > 0.0)) fatal("c > 0", "capacity cost must be positive");
  if (!(p.k >= 0.0)) fatal("k >= 0", "production cost must be non-negative");
  if (!(p.b >= 0.0)) fatal("b >= 0", "demand floor must be non-negative");
  if (!(p.lambda > 0.0)) fatal("lambda > 0", "tail rate must be positive");
  if (p.delta && !(*p.delta > 0.0 && *p.delta < 1.0))
    fatal("0 < delta < 1", "discount factor must lie strictly between 0 and 1");
  if (!(p.reservation >= 0.0)) fatal("reservation >= 0", "reservation profit must be non-negative");

  if (v.fatal.empty()) {
    if (!(p.r - p.k > p.c))
      fatal("r - k > c", "margin does not cover the capacity cost; no capacity is viable");
    else if (!(p.r - p.k - p.c > p.c))
      warn("r - k - c > c", "net margin is below the capacity cost; interior results may degenerate");
    if (p.b > 0.0 && 1.0 / p.lambda < p.b)
      warn("1/lambda >= b", "stochastic tail is small relative to the demand floor");
  }
  return v;
}

ValidationResult validate(const MarketParams& p, const DemandModel& d) {
  ValidationResult v = validate_params(p);
  auto warn = [&](const char* cons, const std::string& msg) { v.warnings.push_back({cons, msg}); };
  // redo the tail-size heuristic with the actual model; 1/lambda understates an
  // Erlang tail by the shape factor
  std::erase_if(v.warnings,
                [](const ValidationIssue& i) { return i.constraint == "1/lambda >= b"; });
  if (v.fatal.empty() && p.b > 0.0 && d.tail_mean() < p.b)
    warn("tail_mean >= b", "stochastic tail is small relative to the demand floor");
  if (d.n < 1) v.fatal.push_back({"n >= 1", "Erlang shape must be a positive integer"});
  if (!(d.lambda > 0.0)) v.fatal.push_back({"lambda > 0", "demand rate must be positive"});
  if (d.base != p.b) warn("demand.base == b", "demand floor differs between market and demand model");
  if (d.lambda != p.lambda) warn("demand.lambda == lambda", "tail rate differs between market and demand model");
  return v;
}

}  // namespace contractlab
