#pragma once

#include "contractlab/errors.hpp"

namespace contractlab {

enum class WBranch { Principal, MinusOne };

// Lambert W: the solution of W e^W = x on the requested branch.
// Principal branch needs x >= -1/e, branch -1 needs x in [-1/e, 0).
// Arguments up to 1e-12 below -1/e are treated as the branch point (W = -1).
double lambert_w(WBranch branch, double x);

// Solves w + ln w = y for w > 0, i.e. W0(e^y), without forming e^y.
// Safe for y far beyond the overflow range of exp.
double lambert_w0_of_exp(double y);

// Regularized lower incomplete gamma P(n, z) for integer shape n >= 1.
double reg_lower_gamma_int(int n, double z);

// Complement Q(n, z) = 1 - P(n, z), computed directly (stable in the tail).
double reg_upper_gamma_int(int n, double z);

}  // namespace contractlab
