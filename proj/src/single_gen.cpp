#include "contractlab/single_gen.hpp"

#include <cmath>

#include "contractlab/solve.hpp"
#include "contractlab/special_fn.hpp"

namespace contractlab {

namespace {

double cap_hi(const DemandModel& d) { return d.base + 50.0 * d.tail_mean(); }
double cap_scale(const DemandModel& d) { return d.base + d.tail_mean(); }

double chain_profit_at(const MarketParams& p, const DemandModel& d, double x) {
  return (p.r - p.k) * d.expected_sales(x) - p.c * x;
}

void require_margin(const MarketParams& p) {
  if (!(p.r - p.k > p.c))
    throw NoViableMargin("margin r-k does not exceed the capacity cost c");
}

Enforceability enforceability_at(const MarketParams& p, const DemandModel& d, double w,
                                 double penalty, double x) {
  Enforceability e;
  e.best_case_profit = (w - p.k - p.c) * x;
  e.shortfall_probability = d.survival(x);
  e.penalty_to_best_case_ratio = e.best_case_profit != 0.0 ? penalty / e.best_case_profit : 0.0;
  e.penalty_to_wholesale_ratio = w != 0.0 ? penalty / w : 0.0;
  return e;
}

// Solves v - ln v = t for the root v >= 1, i.e. v = -W_{-1}(-e^{-t}).
// Stable for arbitrarily large t, where forming e^{-t} would underflow.
double upper_root_v_minus_ln_v(double t) {
  if (!(t >= 1.0)) throw DomainError("v - ln v = t needs t >= 1");
  double v = t + std::log(t) + 1.0;  // above the root; Newton descends monotonically
  for (int i = 0; i < 60; ++i) {
    const double h = v - std::log(v) - t;
    const double step = h * v / (v - 1.0);
    v -= step;
    if (std::abs(step) < 1e-15 * (1.0 + v)) break;
  }
  return v;
}

}  // namespace

CentralizedSolution centralized_optimum(const MarketParams& p, const DemandModel& d) {
  require_margin(p);
  const double margin = p.r - p.k;
  if (d.kind == TailKind::Exponential) {
    const double x = d.base + std::log(margin / p.c) / d.lambda;
    return {x, chain_profit_at(p, d, x)};
  }
  SolveConfig cfg{d.base, cap_hi(d), 1e-8 * cap_scale(d), 200};
  const GoldenResult g =
      golden_section_max([&](double x) { return chain_profit_at(p, d, x); }, cfg);
  auto foc = [&](double x) { return margin * d.survival(x) - p.c; };
  const double x = foc_polish(foc, g.x_max, d.base, cap_hi(d), 4.0 * cfg.abs_tol,
                              1e-13 * cap_scale(d));
  return {x, chain_profit_at(p, d, x)};
}

double supplier_best_response_wholesale(const MarketParams& p, const DemandModel& d, double w) {
  if (w < p.c + p.k) return 0.0;
  if (d.kind == TailKind::Exponential)
    return d.base + std::log((w - p.k) / p.c) / d.lambda;
  SolveConfig cfg{d.base, cap_hi(d), 1e-8 * cap_scale(d), 200};
  const GoldenResult g =
      golden_section_max([&](double x) { return supplier_profit(p, d, w, x); }, cfg);
  auto foc = [&](double x) { return (w - p.k) * d.survival(x) - p.c; };
  return foc_polish(foc, g.x_max, d.base, cap_hi(d), 4.0 * cfg.abs_tol, 1e-13 * cap_scale(d));
}

double supplier_profit(const MarketParams& p, const DemandModel& d, double w, double x) {
  return (w - p.k) * d.expected_sales(x) - p.c * x;
}

double oem_profit(const MarketParams& p, const DemandModel& d, double w, double x) {
  return (p.r - w) * d.expected_sales(x);
}

WholesaleSolution oem_optimal_wholesale(const MarketParams& p, const DemandModel& d) {
  const CentralizedSolution fb = centralized_optimum(p, d);
  const double margin = p.r - p.k;
  WholesaleSolution out;
  const bool closed_form_ok =
      d.kind == TailKind::Exponential && margin > (d.base * d.lambda + 1.0) * p.c;
  if (closed_form_ok) {
    out.w_tilde = p.k + std::sqrt(margin * p.c / (d.base * d.lambda + 1.0));
  } else {
    SolveConfig cfg{p.k + p.c, p.r, 1e-8 * (p.r - p.k), 200};
    const GoldenResult g = golden_section_max(
        [&](double w) {
          return (p.r - w) * d.expected_sales(supplier_best_response_wholesale(p, d, w));
        },
        cfg);
    out.w_tilde = g.x_max;
    out.report.annotations.push_back("numeric_fallback");
  }
  const double x = supplier_best_response_wholesale(p, d, out.w_tilde);
  out.report.capacity = x;
  out.report.supplier_profit = supplier_profit(p, d, out.w_tilde, x);
  out.report.oem_profit = oem_profit(p, d, out.w_tilde, x);
  out.report.chain_profit = out.report.supplier_profit + out.report.oem_profit;
  out.report.first_best_profit = fb.pi_star;
  out.report.efficiency = out.report.chain_profit / fb.pi_star;
  return out;
}

PenaltyContractSolution coordinated_lump_sum(const MarketParams& p, const DemandModel& d) {
  if (d.kind == TailKind::Erlang) return coordinated_penalty_numeric(p, d);
  const CentralizedSolution fb = centralized_optimum(p, d);
  const double Z = p.reservation;
  if (Z > fb.pi_star)
    throw ReservationTooHigh("reservation profit exceeds the first-best chain profit");
  const double lam = d.lambda;
  const double u = d.base * lam + 1.0;
  const double L = std::log((p.r - p.k) / p.c);
  PenaltyContractSolution s;
  s.kind = PenaltyKind::LumpSum;
  s.w_hat = p.k + p.c + (p.c * L + Z * lam) / u;
  s.penalty = (p.r - s.w_hat) / lam;
  s.capacity = fb.x_star;
  s.supplier_profit = Z;
  s.oem_profit = fb.pi_star - Z;
  s.enforceability = enforceability_at(p, d, s.w_hat, s.penalty, s.capacity);
  return s;
}

PenaltyContractSolution coordinated_unit_penalty(const MarketParams& p, const DemandModel& d) {
  if (d.kind == TailKind::Erlang)
    throw DomainError("per-unit penalty coordination is only available for an exponential tail");
  const CentralizedSolution fb = centralized_optimum(p, d);
  const double Z = p.reservation;
  if (Z > fb.pi_star)
    throw ReservationTooHigh("reservation profit exceeds the first-best chain profit");
  const double lam = d.lambda;
  const double u = d.base * lam + 1.0;
  const double L = std::log((p.r - p.k) / p.c);
  PenaltyContractSolution s;
  s.kind = PenaltyKind::PerUnit;
  s.w_hat = p.k + p.c + (p.c * L + Z * lam) / u;
  s.penalty = p.r - s.w_hat;  // per-unit rate; equals lambda times the lump sum
  s.capacity = d.base + std::log((s.w_hat - p.k + s.penalty) / p.c) / lam;
  s.supplier_profit = Z;
  s.oem_profit = fb.pi_star - Z;
  s.enforceability = enforceability_at(p, d, s.w_hat, s.penalty, s.capacity);
  return s;
}

PenaltyContractSolution coordinated_penalty_numeric(const MarketParams& p, const DemandModel& d) {
  const CentralizedSolution fb = centralized_optimum(p, d);
  const double Z = p.reservation;
  if (Z > fb.pi_star)
    throw ReservationTooHigh("reservation profit exceeds the first-best chain profit");
  const double S = d.survival(fb.x_star);
  const double f = d.tail_density(fb.x_star - d.base);
  const double M = d.expected_sales(fb.x_star);
  if (!(f > 0.0)) throw BracketFailure("shortfall density vanishes at the first-best capacity");
  // Penalty that makes the supplier's capacity choice stationary at x*:
  auto rho_of = [&](double w) { return (p.c - (w - p.k) * S) / f; };
  // Participation gap at x* given that penalty:
  auto gap = [&](double w) {
    return -p.c * fb.x_star + (w - p.k) * M - rho_of(w) * S - Z;
  };
  SolveConfig cfg{p.k + p.c, p.r, 1e-12 * (p.r - p.k), 200};
  const BisectResult root = bisect_root(gap, cfg);
  PenaltyContractSolution s;
  s.kind = PenaltyKind::LumpSum;
  s.w_hat = root.root;
  s.penalty = rho_of(s.w_hat);
  s.capacity = fb.x_star;
  s.supplier_profit = Z;
  s.oem_profit = fb.pi_star - Z;
  s.enforceability = enforceability_at(p, d, s.w_hat, s.penalty, s.capacity);
  return s;
}

double min_wholesale_for_reservation(const MarketParams& p) {
  if (!(p.c > 0.0) || !(p.lambda > 0.0) || !(p.b >= 0.0))
    throw DomainError("min_wholesale_for_reservation: invalid parameters");
  const double Z = p.reservation;
  if (Z < 0.0) throw DomainError("reservation profit must be non-negative");
  if (Z == 0.0) return p.k + p.c;
  const double u = p.b * p.lambda + 1.0;
  const double t = u + Z * p.lambda / p.c - std::log(u);
  const double v = upper_root_v_minus_ln_v(t);  // -W_{-1}(-u e^{-u - Z lambda / c}) / 1
  return p.k + p.c * v / u;
}

}  // namespace contractlab
