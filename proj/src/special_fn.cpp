#include "contractlab/special_fn.hpp"

#include <cmath>

namespace contractlab {

namespace {

constexpr double kInvE = 0.36787944117144232159552377016146;  // 1/e
constexpr double kBranchSlack = 1e-12;

// Halley iteration for w e^w = x.  The seed must lie on the right branch.
double halley(double w, double x) {
  for (int i = 0; i < 50; ++i) {
    if (std::abs(w + 1.0) < 1e-12) return -1.0;  // branch point, derivative singular
    const double e = std::exp(w);
    const double p = w * e - x;
    if (p == 0.0) return w;
    const double denom = e * (w + 1.0) - (w + 2.0) * p / (2.0 * w + 2.0);
    const double next = w - p / denom;
    if (std::abs(next - w) < 1e-14 * (1.0 + std::abs(next))) return next;
    w = next;
  }
  return w;
}

// Series about the branch point in p = +-sqrt(2(1 + e x)).
double branch_point_seed(double x, double sign) {
  const double p = sign * std::sqrt(2.0 * std::max(0.0, 1.0 + x / kInvE));
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

}  // namespace

double lambert_w(WBranch branch, double x) {
  if (branch == WBranch::Principal) {
    if (x < -kInvE) {
      if (-kInvE - x > kBranchSlack)
        throw DomainError("lambert_w: principal branch requires x >= -1/e");
      return -1.0;
    }
    if (x == 0.0) return 0.0;
    double w;
    if (x < -0.3) {
      w = branch_point_seed(x, +1.0);
    } else if (x < 0.5) {
      w = x * (1.0 + x * (-1.0 + 1.5 * x));
    } else if (x < 3.0) {
      w = std::log1p(x);
    } else {
      const double l1 = std::log(x), l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    }
    return halley(w, x);
  }

  // branch -1
  if (x >= 0.0) throw DomainError("lambert_w: branch -1 requires x in [-1/e, 0)");
  if (x < -kInvE) {
    if (-kInvE - x > kBranchSlack)
      throw DomainError("lambert_w: branch -1 requires x >= -1/e");
    return -1.0;
  }
  double w;
  if (x < -0.27) {
    w = branch_point_seed(x, -1.0);
  } else {
    const double l1 = std::log(-x), l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(w, x);
}

double lambert_w0_of_exp(double y) {
  if (y < 1.0) {
    // e^y <= e here, no overflow risk and the direct evaluation is accurate
    return lambert_w(WBranch::Principal, std::exp(y));
  }
  // Newton on g(w) = w + ln w - y; g' = 1 + 1/w, monotone for w > 0
  double w = y > 3.0 ? y - std::log(y) : 1.0;
  for (int i = 0; i < 50; ++i) {
    const double g = w + std::log(w) - y;
    const double step = g * w / (w + 1.0);
    w -= step;
    if (w <= 0.0) w = 1e-300;  // cannot happen from a sane seed, belt and braces
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double reg_upper_gamma_int(int n, double z) {
  if (n < 1 || n > 170) throw DomainError("reg_upper_gamma_int: shape must be in [1, 170]");
  if (z <= 0.0) return 1.0;
  if (z > 600.0) {
    // log-space terms; each is exp(j ln z - ln j! - z), immune to overflow
    double sum = 0.0;
    const double lz = std::log(z);
    for (int j = 0; j < n; ++j) sum += std::exp(j * lz - std::lgamma(j + 1.0) - z);
    return sum;
  }
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < n; ++j) {
    term *= z / j;
    sum += term;
  }
  return std::exp(-z) * sum;
}

double reg_lower_gamma_int(int n, double z) {
  if (n < 1 || n > 170) throw DomainError("reg_lower_gamma_int: shape must be in [1, 170]");
  if (z <= 0.0) return 0.0;
  if (z >= n + 1.0) return 1.0 - reg_upper_gamma_int(n, z);
  // series: P(n,z) = z^n e^-z / Gamma(n+1) * sum_m z^m / ((n+1)...(n+m))
  double ap = n, del = 1.0, sum = 1.0;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= z / ap;
    sum += del;
    if (del < sum * 1e-17) break;
  }
  return sum * std::exp(-z + n * std::log(z) - std::lgamma(n + 1.0));
}

}  // namespace contractlab
