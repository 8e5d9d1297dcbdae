#include "netvuln/quadrature.hpp"

#include <cmath>

#include "netvuln/errors.hpp"

namespace netvuln {
namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double h = b - a;
        const double left = h / 12.0 * (fa + 4.0 * flm + fm);
        const double right = h / 12.0 * (fm + 4.0 * frm + fb);
        const double err = left + right - whole;
        if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
        if (depth >= max_depth)
            throw QuadratureTolError("adaptive Simpson: tolerance unreachable at max depth");
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Simpson{f, max_depth}.recurse(a, b, fa, fm, fb, whole, abs_tol, 0);
}

}  // namespace netvuln
