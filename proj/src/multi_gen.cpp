#include "contractlab/multi_gen.hpp"

#include <cmath>
#include <limits>

#include "contractlab/single_gen.hpp"
#include "contractlab/solve.hpp"
#include "contractlab/special_fn.hpp"

namespace contractlab {

namespace {

double cap_hi(const DemandModel& d) { return d.base + 50.0 * d.tail_mean(); }
double cap_scale(const DemandModel& d) { return d.base + d.tail_mean(); }

}  // namespace

double supplier_npv_endogenous(const MarketParams& p, const DemandModel& d, double w, double x) {
  const double delta = p.require_delta();
  const double s = d.survival(x);  // 1 for x <= base, so the denominator is exactly 1 there
  return supplier_profit(p, d, w, x) / ((1.0 - delta) + delta * s);
}

RenewalAnalysis npv_exogenous(const MarketParams& p, const DemandModel& d, double w, double R) {
  const double delta = p.require_delta();
  if (!(R >= 0.0 && R <= 1.0)) throw DomainError("renewal probability must lie in [0, 1]");
  const CentralizedSolution fb = centralized_optimum(p, d);
  const double x = supplier_best_response_wholesale(p, d, w);
  RenewalAnalysis a;
  a.capacity = x;
  a.renewal_prob = R;
  a.expected_generations = R < 1.0 ? 1.0 / (1.0 - R) : std::numeric_limits<double>::infinity();
  a.supplier_npv = supplier_profit(p, d, w, x) / (1.0 - delta * R);
  a.oem_npv = oem_profit(p, d, w, x) / (1.0 - delta);
  a.chain_npv_first_best = fb.pi_star / (1.0 - delta);
  a.oem_fraction = a.oem_npv / a.chain_npv_first_best;
  return a;
}

double supplier_best_response_endogenous(const MarketParams& p, const DemandModel& d, double w) {
  const double delta = p.require_delta();
  if (w < p.c + p.k)
    throw ParticipationViolated("wholesale price below the supplier's unit cost c+k");
  if (d.kind == TailKind::Exponential) {
    const double lam = d.lambda, b = d.base, c = p.c, k = p.k;
    const double y = std::log((1.0 - delta) / delta) + (w - k) / (delta * c) - 1.0 +
                     b * lam * (w - k - c) / c;
    const double W = lambert_w0_of_exp(y);
    const double x = b + (std::log(delta / (1.0 - delta)) + std::log(W)) / lam;
    const double x_single = supplier_best_response_wholesale(p, d, w);
    // The interior stationary form is invalid in a sliver just above c+k where
    // it dips below the single-generation response; maximize directly there.
    if (x > x_single) return x;
  }
  SolveConfig cfg{d.base, cap_hi(d), 1e-8 * cap_scale(d), 200};
  const GoldenResult g =
      golden_section_max([&](double x) { return supplier_npv_endogenous(p, d, w, x); }, cfg);
  auto foc = [&](double x) {
    const double s = d.survival(x);
    const double dprofit = -p.c + (w - p.k) * s;
    const double denom = (1.0 - delta) + delta * s;
    return dprofit * denom + supplier_profit(p, d, w, x) * delta * d.tail_density(x - d.base);
  };
  return foc_polish(foc, g.x_max, d.base, cap_hi(d), 4.0 * cfg.abs_tol, 1e-12 * cap_scale(d));
}

double coordinating_wholesale(const MarketParams& p, const DemandModel& d) {
  const double delta = p.require_delta();
  const CentralizedSolution fb = centralized_optimum(p, d);
  if (d.kind == TailKind::Exponential) {
    const double L = std::log((p.r - p.k) / p.c);
    return p.k + (delta * p.c * (1.0 + d.base * d.lambda + L) + (1.0 - delta) * (p.r - p.k)) /
                     (1.0 + delta * d.base * d.lambda);
  }
  auto gap = [&](double w) {
    return supplier_best_response_endogenous(p, d, w) - fb.x_star;
  };
  SolveConfig cfg{p.k + p.c, p.r, 1e-10 * (p.r - p.k), 200};
  return bisect_root(gap, cfg).root;
}

RenewalAnalysis coordinated_renewal_report(const MarketParams& p, const DemandModel& d) {
  const double delta = p.require_delta();
  const CentralizedSolution fb = centralized_optimum(p, d);
  const double wc = coordinating_wholesale(p, d);
  const double x = fb.x_star;
  const double s = d.survival(x);  // c / (r - k) at the first best
  RenewalAnalysis a;
  a.capacity = x;
  a.renewal_prob = 1.0 - s;
  a.expected_generations = 1.0 / s;
  a.supplier_npv = supplier_profit(p, d, wc, x) / ((1.0 - delta) + delta * s);
  a.oem_npv = oem_profit(p, d, wc, x) / (1.0 - delta);
  a.chain_npv_first_best = fb.pi_star / (1.0 - delta);
  a.oem_fraction = a.oem_npv / a.chain_npv_first_best;
  return a;
}

double asymptotic_oem_fraction(const MarketParams& p) {
  const double delta = p.require_delta();
  const double bl = p.b * p.lambda;
  return delta * (bl + 1.0) / (delta * bl + 1.0);
}

EndogenousOptimum optimal_wholesale_endogenous(const MarketParams& p, const DemandModel& d) {
  const double delta = p.require_delta();
  const CentralizedSolution fb = centralized_optimum(p, d);
  SolveConfig cfg{p.k + p.c, p.r, 1e-8 * (p.r - p.k), 200};
  const GoldenResult g = golden_section_max(
      [&](double w) {
        return (p.r - w) * d.expected_sales(supplier_best_response_endogenous(p, d, w));
      },
      cfg);
  EndogenousOptimum out;
  out.w_opt = g.x_max;
  const double x = supplier_best_response_endogenous(p, d, out.w_opt);
  const double s = d.survival(x);
  out.analysis.capacity = x;
  out.analysis.renewal_prob = 1.0 - s;
  out.analysis.expected_generations = 1.0 / s;
  out.analysis.supplier_npv = supplier_profit(p, d, out.w_opt, x) / ((1.0 - delta) + delta * s);
  out.analysis.oem_npv = oem_profit(p, d, out.w_opt, x) / (1.0 - delta);
  out.analysis.chain_npv_first_best = fb.pi_star / (1.0 - delta);
  out.analysis.oem_fraction = out.analysis.oem_npv / out.analysis.chain_npv_first_best;
  out.oem_profit_opt = oem_profit(p, d, out.w_opt, x);
  out.w_coord = coordinating_wholesale(p, d);
  out.oem_profit_coord = oem_profit(p, d, out.w_coord, fb.x_star);
  out.pct_difference = 100.0 * (out.oem_profit_opt - out.oem_profit_coord) / out.oem_profit_opt;
  return out;
}

}  // namespace contractlab
