#pragma once

#include <functional>

namespace netvuln {

// Adaptive Simpson integration with absolute tolerance.
// Throws QuadratureTolError if the tolerance is unreachable within max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-8, int max_depth = 40);

}  // namespace netvuln
