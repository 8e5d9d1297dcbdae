#include "netvuln/special.hpp"

#include <cmath>

#include "netvuln/errors.hpp"

namespace netvuln {
namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double x, double a, double b) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw NoConvergenceError("incomplete beta continued fraction did not converge");
}

}  // namespace

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double reg_inc_beta(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(x, a, b) / a;
    }
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double reg_inc_beta_comp(double x, double a, double b) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    if (x < (a + 1.0) / (a + b + 2.0)) return 1.0 - reg_inc_beta(x, a, b);
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    return front * beta_cf(1.0 - x, b, a) / b;
}

}  // namespace netvuln
