#pragma once

#include <cmath>
#include <utility>

#include "contractlab/errors.hpp"

namespace contractlab {

struct SolveConfig {
  double lo = 0.0;
  double hi = 1.0;
  double abs_tol = 1e-10;  // bracket width at which to stop
  int max_iter = 200;
};

struct GoldenResult {
  double x_max = 0.0;
  double f_max = 0.0;
  int iterations = 0;
};

// Golden-section maximization of a unimodal function on [lo, hi].
template <class F>
GoldenResult golden_section_max(F&& f, const SolveConfig& cfg) {
  if (!(cfg.lo < cfg.hi)) throw DomainError("golden_section_max: empty bracket");
  if (!(cfg.abs_tol > 0.0)) throw DomainError("golden_section_max: tolerance must be positive");
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = cfg.lo, b = cfg.hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > cfg.abs_tol) {
    if (++it > cfg.max_iter) throw MaxIterExceeded("golden_section_max: iteration cap hit");
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm), it};
}

struct BisectResult {
  double root = 0.0;
  int iterations = 0;
};

// Bisection for a sign change of g on [lo, hi].
template <class G>
BisectResult bisect_root(G&& g, const SolveConfig& cfg) {
  double lo = cfg.lo, hi = cfg.hi;
  if (!(lo < hi)) throw DomainError("bisect_root: empty bracket");
  double glo = g(lo);
  if (glo == 0.0) return {lo, 0};
  double ghi = g(hi);
  if (ghi == 0.0) return {hi, 0};
  if ((glo > 0.0) == (ghi > 0.0))
    throw NoSignChange("bisect_root: no sign change over the bracket");
  int it = 0;
  while (hi - lo > cfg.abs_tol) {
    if (++it > cfg.max_iter) throw MaxIterExceeded("bisect_root: iteration cap hit");
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return {mid, it};
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), it};
}

// Refine a golden-section argmax using a signed first-order condition.
// Looks for a sign change of g in a window around x0 (within [lo, hi]) and
// bisects it down to fine_tol; returns x0 unchanged if no sign change appears.
template <class G>
double foc_polish(G&& g, double x0, double lo, double hi, double window, double fine_tol) {
  double h = window;
  for (int grow = 0; grow < 12; ++grow) {
    const double a = std::max(lo, x0 - h);
    const double b = std::min(hi, x0 + h);
    if (a < b) {
      const double ga = g(a), gb = g(b);
      if (ga == 0.0) return a;
      if (gb == 0.0) return b;
      if ((ga > 0.0) != (gb > 0.0)) {
        SolveConfig cfg;
        cfg.lo = a;
        cfg.hi = b;
        cfg.abs_tol = fine_tol;
        cfg.max_iter = 200;
        return bisect_root(g, cfg).root;
      }
    }
    if (a == lo && b == hi) break;
    h *= 4.0;
  }
  return x0;
}

}  // namespace contractlab
