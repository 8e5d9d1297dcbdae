#pragma once

#include <cstdint>

namespace netvuln {

// log of the Euler beta function B(a,b)
double log_beta(double a, double b);

// Regularized incomplete beta function I_x(a,b), continued-fraction evaluation.
double reg_inc_beta(double x, double a, double b);

// Complement 1 - I_x(a,b) with full relative accuracy even when the value is
// exponentially small.
double reg_inc_beta_comp(double x, double a, double b);

}  // namespace netvuln
