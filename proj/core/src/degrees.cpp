#include "netvuln/degrees.hpp"

#include <algorithm>
#include <cmath>

#include "netvuln/errors.hpp"
#include "netvuln/quadrature.hpp"
#include "netvuln/rng.hpp"
#include "netvuln/special.hpp"

namespace netvuln {

double incomplete_beta_sum(double a, double c, std::uint32_t k) {
    if (!(a > 0.0 && c > 0.0)) throw Error("incomplete_beta_sum requires a > 0, c > 0");
    if (k == 0) return 1.0 / c;
    const double kk = static_cast<double>(k);
    if (c >= 1.0) {
        const auto integrand = [=](double x) {
            return std::pow(x, c - 1.0) * std::pow(1.0 - x, kk);
        };
        return std::pow(a, -c) * integrate(integrand, 0.0, a, 1e-12);
    }
    // substitute x = u^{1/c} to absorb the endpoint singularity
    const auto integrand = [=](double u) {
        return std::pow(1.0 - std::pow(u, 1.0 / c), kk);
    };
    return std::pow(a, -c) / c * integrate(integrand, 0.0, std::pow(a, c), 1e-12);
}

double jump_tail(double t, std::uint32_t k, double gamma, double beta) {
    if (!(t >= 0.0)) throw Error("jump_tail requires t >= 0");
    if (!(gamma > 0.0 && gamma < 1.0 && beta > 0.0))
        throw Error("jump_tail requires gamma in (0,1) and beta > 0");
    if (t == 0.0) return 0.0;
    // P(Z_t >= k+1) = 1 - I_x(beta/gamma, k+1) at x = e^{-gamma t}
    return reg_inc_beta_comp(std::exp(-gamma * t), beta / gamma, k + 1.0);
}

DegreeDistribution mu_damaged(double eps, double gamma, double beta, std::uint32_t k_max) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("mu_damaged requires eps in (0,1)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw GammaRangeError("mu_damaged requires gamma in (0,1)");
    if (!(beta > 0.0 && beta <= 1.0)) throw Error("mu_damaged requires beta in (0,1]");

    DegreeDistribution mu;
    mu.eps = eps;
    mu.gamma = gamma;
    mu.beta = beta;
    mu.damaged = true;
    mu.tail.resize(k_max + 1);
    mu.tail[0] = 1.0;
    // tail_k = (1-eps)^{-1} int_eps^1 P(Z_{-log y} >= k) dy. Swapping the
    // order of the nested integrals collapses the inner one to a length:
    //   tail_k = B(k,c)^{-1}/(1-eps) int_{eps^gamma}^1
    //                x^{c-1} (1-x)^{k-1} (x^{1/gamma} - eps) dx,  c = beta/gamma.
    // The factor (1-eps^gamma)^{k-1} is pulled out analytically so the
    // quadrature runs on an O(1)-scaled integrand and the exponentially
    // small tail keeps full relative accuracy.
    const double c = beta / gamma;
    const double lo = std::pow(eps, gamma);
    const double log_decay = std::log1p(-lo);
    // the scaled integrand peaks within O(1/k) of the left endpoint, so the
    // panel boundaries are spaced geometrically away from it
    std::vector<double> cuts{lo};
    for (int j = 48; j >= 1; --j) cuts.push_back(lo + (1.0 - lo) * std::ldexp(1.0, -j));
    cuts.push_back(1.0);
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        const double shift = static_cast<double>(k - 1);
        const auto scaled = [=](double x) {
            double tilt = 1.0;
            if (shift > 0.0)
                tilt = x >= 1.0 ? 0.0 : std::exp(shift * (std::log1p(-x) - log_decay));
            return std::pow(x, c - 1.0) * tilt * (std::pow(x, 1.0 / gamma) - eps);
        };
        double peak = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            peak = std::max(peak, scaled(0.5 * (cuts[i] + cuts[i + 1])));
        const double tol =
            std::max(peak * (1.0 - lo), 1e-300) * 1e-9 / static_cast<double>(cuts.size());
        double integral = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            integral += integrate(scaled, cuts[i], cuts[i + 1], tol);
        mu.tail[k] = std::exp(-log_beta(k, c) + shift * log_decay) * integral /
                     (1.0 - eps);
    }
    return mu;
}

DegreeDistribution mu_undamaged(double gamma, double beta, std::uint32_t k_max) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw GammaRangeError("mu_undamaged requires gamma in (0,1)");
    if (!(beta > 0.0)) throw Error("mu_undamaged requires beta > 0");
    DegreeDistribution mu;
    mu.gamma = gamma;
    mu.beta = beta;
    mu.tail.resize(k_max + 1);
    const double bg = beta / gamma;
    const double ig = 1.0 / gamma;
    const double denom = log_beta(bg, ig);
    for (std::uint32_t k = 0; k <= k_max; ++k)
        mu.tail[k] = std::exp(log_beta(k + bg, ig) - denom);
    return mu;
}

double max_indegree_constant(double eps, double gamma) {
    if (!(eps > 0.0 && eps < 1.0))
        throw EpsOutOfRange("max_indegree_constant requires eps in (0,1)");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw GammaRangeError("max_indegree_constant requires gamma in (0,1)");
    return -1.0 / std::log1p(-std::pow(eps, gamma));
}

std::vector<double> empirical_indegree(const PaGraph& graph, const VertexMask& mask) {
    std::vector<double> hist;
    std::uint64_t alive = 0;
    for (Vertex v = 1; v <= graph.n; ++v) {
        if (!mask.alive[v]) continue;
        ++alive;
        const std::uint32_t k = graph.indegree[v];
        if (k >= hist.size()) hist.resize(k + 1, 0.0);
        hist[k] += 1.0;
    }
    if (alive == 0) return hist;
    for (double& h : hist) h /= static_cast<double>(alive);
    return hist;
}

std::vector<double> simulate_jump_process(const JumpProcessSpec& spec, double horizon,
                                          std::uint64_t seed) {
    if (!(horizon >= 0.0)) throw Error("simulate_jump_process requires horizon >= 0");
    Rng rng(mix64(seed ^ 0x6a756d7070726f63ULL));
    std::vector<double> times;
    double t = 0.0;
    std::uint64_t state = static_cast<std::uint64_t>(spec.start);
    for (;;) {
        t += rng.exponential() / spec.rule(state);
        if (t > horizon) return times;
        times.push_back(t);
        ++state;
    }
}

double total_variation(const std::vector<double>& pmf, const DegreeDistribution& mu) {
    const std::size_t upto = std::max(pmf.size(), mu.tail.size());
    double tv = 0.0;
    double emp_mass = 0.0, mu_mass = 0.0;
    for (std::uint32_t k = 0; k < upto; ++k) {
        const double e = k < pmf.size() ? pmf[k] : 0.0;
        const double m = mu.pmf(k);
        tv += std::abs(e - m);
        emp_mass += e;
        mu_mass += m;
    }
    tv += std::abs((1.0 - emp_mass) - (1.0 - mu_mass));  // mass beyond the arrays
    return 0.5 * tv;
}

}  // namespace netvuln
