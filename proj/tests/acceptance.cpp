// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
// Every tolerance is pinned here; seeds are fixed so runs are reproducible.
// Run all criteria with no arguments or a subset by number: ./acceptance 3 12

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "netvuln/alt_models.hpp"
#include "netvuln/components.hpp"
#include "netvuln/degrees.hpp"
#include "netvuln/ibp.hpp"
#include "netvuln/pa_graph.hpp"
#include "netvuln/parallel.hpp"
#include "netvuln/rng.hpp"
#include "netvuln/rules.hpp"
#include "netvuln/spectral.hpp"

namespace {

using namespace netvuln;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* summary;
    std::function<Outcome()> run;
};

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 1. companion operator eigenvalue log(1/eps) at eps = e^-2
Outcome companion_eigenvalue() {
    const auto started = std::chrono::steady_clock::now();
    const auto result =
        spectral::spectral_radius_refined(std::exp(-2.0), 0.5, 1.0, 2000, true);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const bool pass = std::abs(result.rho - 2.0) <= 1e-3 && seconds < 10.0;
    return {pass, fmt("rho=%.6f vs 2.000 +- 1e-3, %.1f s (limit 10 s)", result.rho, seconds)};
}

// 2. gamma = 1/2: beta log(1/eps) <= rho <= (gamma+beta) log(1/eps)
Outcome half_gamma_sandwich() {
    bool pass = true;
    std::ostringstream detail;
    for (double beta : {0.5, 1.0})
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            const double rho = spectral::spectral_radius_refined(eps, 0.5, beta, 1024).rho;
            const double log_inv = std::log(1.0 / eps);
            const bool ok = beta * log_inv <= rho && rho <= (0.5 + beta) * log_inv;
            pass = pass && ok;
            if (!ok)
                detail << fmt(" [beta=%g eps=%g rho=%.4f out of (%.4f, %.4f)]", beta, eps,
                              rho, beta * log_inv, (0.5 + beta) * log_inv);
        }
    if (pass) detail << "all 6 (beta, eps) cases inside the affine sandwich";
    return {pass, detail.str()};
}

// 3. gamma > 1/2 closed-form bracket and leading-order constant
Outcome pc_bounds_bracket() {
    bool pass = true;
    std::ostringstream detail;
    for (double gamma : {0.6, 0.75}) {
        for (double eps : {1e-2, 1e-3}) {
            const double pc = spectral::pc_spectral(eps, gamma, 1.0);
            const auto bounds = spectral::pc_bounds(eps, gamma, 1.0);
            if (!(bounds.lower <= pc && pc <= bounds.upper)) {
                pass = false;
                detail << fmt(" [gamma=%g eps=%g pc=%.4g outside (%.4g, %.4g)]", gamma, eps,
                              pc, bounds.lower, bounds.upper);
            }
            if (eps == 1e-3) {
                const double target = (2 * gamma - 1) / std::sqrt(gamma + 1.0);
                const double ratio = pc / std::pow(eps, gamma - 0.5) / target;
                detail << fmt(" gamma=%g: pc/(eps^(g-1/2) target)=%.3f;", gamma, ratio);
                if (std::abs(ratio - 1.0) > 0.25) pass = false;
            }
        }
    }
    return {pass, detail.str() + " tol 25%"};
}

// 4. rho(p A) = p rho(A) to relative 1e-12
Outcome p_linearity() {
    const auto grid = spectral::assemble(0.05, 0.6, 1.0, 512);
    const double rho = spectral::spectral_radius(grid).rho;
    double worst = 0.0;
    for (double p : {0.1, 0.5, 0.9}) {
        auto scaled = grid;
        for (double& v : scaled.kernel) v *= p;
        const double rho_p = spectral::spectral_radius(scaled).rho;
        worst = std::max(worst, std::abs(rho_p - p * rho) / (p * rho));
    }
    return {worst <= 1e-12, fmt("max relative deviation %.2e (limit 1e-12)", worst)};
}

// 5. giant fraction at n=1e6 inside the IBP survival bracket
Outcome giant_vs_survival() {
    const auto rule = AttachmentRule::affine(0.5, 1.0);
    const auto zeta = ibp::survival_probability(0.05, rule, 1.0, 10000, 200, 1000, 501);
    const auto giant = giant_fraction(rule, 1000000, 0.05, 1.0, 20, 502);
    const double lo = zeta.zeta_lower - 0.03;
    const double hi = zeta.zeta_upper + 0.03;
    const bool pass = giant.mean >= lo && giant.mean <= hi;
    return {pass, fmt("|C|/(n - eps n) = %.4f vs zeta bracket [%.4f, %.4f] (+- 0.03)",
                      giant.mean, zeta.zeta_lower, zeta.zeta_upper)};
}

// 6. Monte Carlo bisection bracket against the spectral threshold
Outcome threshold_cross_check() {
    const auto rule = AttachmentRule::affine(0.5, 1.0);
    const auto est = pc_bisect(rule, {10000, 100000, 1000000}, 0.01, 4, 0.01, 601);
    const double pc = spectral::pc_spectral(0.01, 0.5, 1.0);
    const double drift =
        pc < est.p_lo ? est.p_lo - pc : (pc > est.p_hi ? pc - est.p_hi : 0.0);
    const bool pass = est.p_hi - est.p_lo <= 0x1p-10 && drift <= 0.02;
    return {pass, fmt("bracket [%.5f, %.5f], pc_spectral %.5f, drift %.4f (limit 0.02)",
                      est.p_lo, est.p_hi, pc, drift)};
}

// 7. total variation against the theoretical damaged degree law, tail slope
Outcome degree_law() {
    const double eps = 0.25, gamma = 0.5, beta = 0.5;
    const auto mu = mu_damaged(eps, gamma, beta, 200);
    const auto rule = AttachmentRule::affine(gamma, beta);
    std::vector<double> tvs(10);
    parallel_for(tvs.size(), [&](std::size_t s) {
        const auto g = generate(rule, 100000, derive_seed(700, 0, s));
        tvs[s] = total_variation(empirical_indegree(g, damage(g, eps)), mu);
    });
    double tv = 0;
    for (double v : tvs) tv += v;
    tv /= static_cast<double>(tvs.size());

    const double target = std::log1p(-std::pow(eps, gamma));
    const double slope = (std::log(mu.tail[150]) - std::log(mu.tail[50])) / 100.0;
    const double slope_err = std::abs(slope - target) / std::abs(target);
    const bool pass = tv <= 0.02 && slope_err <= 0.05;
    return {pass, fmt("mean TV %.4f (limit 0.02); tail slope %.4f vs %.4f (err %.1f%%)",
                      tv, slope, target, 100 * slope_err)};
}

// 8. maximal indegree over log n against -1/log(1 - eps^gamma)
Outcome max_degree_scaling() {
    const auto rule = AttachmentRule::affine(0.5, 0.5);
    const double target = max_indegree_constant(0.25, 0.5);
    double err5 = 0.0, err6 = 0.0, ratio6 = 0.0;
    const std::size_t seeds = 12;
    for (int which = 0; which < 2; ++which) {
        const Vertex n = which == 0 ? 100000 : 1000000;
        std::vector<double> ratios(seeds);
        parallel_for(seeds, [&](std::size_t s) {
            const auto g = generate(rule, n, derive_seed(800, 0, s));
            const auto cut = static_cast<Vertex>(std::floor(0.25 * n));
            ratios[s] = g.max_indegree(cut + 1) / std::log(static_cast<double>(n));
        });
        double mean = 0;
        for (double r : ratios) mean += r;
        mean /= static_cast<double>(seeds);
        const double err = std::abs(mean - target) / target;
        (which == 0 ? err5 : err6) = err;
        if (which == 1) ratio6 = mean;
    }
    const bool pass = err6 <= 0.25 && err6 < err5;
    return {pass,
            fmt("maxdeg/log n=%.4f vs %.4f: rel err %.3f at 1e6 (limit 0.25), %.3f at 1e5",
                ratio6, target, err6, err5)};
}

// 9. pure jump process law against the incomplete-beta closed form
Outcome jump_process_law() {
    const JumpProcessSpec spec{AttachmentRule::affine(0.5, 1.0), 0};
    const int reps = 100000;
    const std::vector<double> ts{0.5, 1.0, 2.0};
    std::vector<std::vector<int>> counts(ts.size(), std::vector<int>(11, 0));
    for (int r = 0; r < reps; ++r) {
        const auto jumps = simulate_jump_process(spec, 2.0, derive_seed(900, 0, r));
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            std::size_t within = 0;
            while (within < jumps.size() && jumps[within] <= ts[ti]) ++within;
            for (std::size_t k = 0; k <= 10; ++k)
                if (within >= k + 1) ++counts[ti][k];
        }
    }
    double worst_z = 0.0;
    for (std::size_t ti = 0; ti < ts.size(); ++ti)
        for (std::size_t k = 0; k <= 10; ++k) {
            const double expected =
                jump_tail(ts[ti], static_cast<std::uint32_t>(k), 0.5, 1.0);
            const double freq = static_cast<double>(counts[ti][k]) / reps;
            const double se = std::sqrt(std::max(expected * (1 - expected), 1e-12) / reps);
            worst_z = std::max(worst_z, std::abs(freq - expected) / std::max(se, 1e-15));
        }
    return {worst_z <= 3.0, fmt("worst |z| over the t x k grid: %.2f (limit 3)", worst_z)};
}

// 10. distance lower bound of the damaged network
Outcome distance_bound() {
    const double eps = 0.05, gamma = 0.5, beta = 1.0, delta = 0.2;
    const Vertex n = 100000;
    const auto g = generate(AttachmentRule::affine(gamma, beta), n, 1001);
    const auto mask = damage(g, eps);
    const auto samples = sample_distances(g, mask, 1000, 1002);
    const double pc = spectral::pc_spectral(eps, gamma, beta);
    const double violation = distance_bound_violation(samples, n, pc, delta);
    return {violation <= 0.05,
            fmt("violation fraction %.4f (limit 0.05), pc_spectral %.4f, bound %.2f",
                violation, pc, (1 - delta) * std::log(n) / std::log(1 / pc))};
}

// 11. inhomogeneous random graph closed forms
Outcome irg_closed_forms() {
    bool pass = true;
    std::ostringstream detail;
    const double a = alt::irg_pc({alt::KernelKind::ChungLu, 0.5}, 0.1, 1024);
    const double b = alt::irg_pc({alt::KernelKind::ChungLu, 0.75}, 0.01, 1024);
    detail << fmt("cl(1/2, 0.1)=%.5f vs 0.43429; cl(3/4, 0.01)=%.5f vs 0.05556;", a, b);
    pass = pass && std::abs(a - 1.0 / std::log(10.0)) <= 1e-3;
    pass = pass && std::abs(b - 0.5 * 0.1 / 0.9) <= 1e-3;
    double worst = 0.0;
    for (double gamma : {0.25, 0.5, 0.75})
        for (double eps : {0.3, 0.1, 0.01})
            worst = std::max(
                worst, std::abs(alt::irg_pc({alt::KernelKind::ChungLu, gamma}, eps, 512) -
                                alt::cl_pc_closed(eps, gamma)));
    detail << fmt(" worst closed-form gap on the 3x3 grid %.1e (limit 1e-3)", worst);
    return {pass && worst <= 1e-3, detail.str()};
}

// 12. two universality classes: slopes 2 gamma - 1 vs gamma - 1/2
Outcome universality_classes() {
    const double gamma = 0.75;
    const std::vector<double> epss{1e-2, 1e-3, 1e-4};
    std::vector<double> log_eps, log_cm, log_pa;
    const auto law = alt::DegreeLaw::power(gamma, 100000);
    for (double eps : epss) {
        log_eps.push_back(std::log(eps));
        log_cm.push_back(std::log(alt::cm_pc(law, eps)));
        log_pa.push_back(std::log(spectral::pc_spectral(eps, gamma, 1.0)));
    }
    const double cm_slope = slope_fit(log_eps, log_cm);
    const double pa_slope = slope_fit(log_eps, log_pa);
    const bool pass = std::abs(cm_slope - (2 * gamma - 1)) <= 0.05 &&
                      std::abs(pa_slope - (gamma - 0.5)) <= 0.05;
    return {pass, fmt("cm slope %.4f vs %.2f; pa slope %.4f vs %.2f (tol 0.05)", cm_slope,
                      2 * gamma - 1, pa_slope, gamma - 0.5)};
}

// 13. coupled generation nests a C-class rule in its affine sandwich
Outcome coupling_nesting() {
    const auto rule = AttachmentRule::c_class_from(
        [](std::uint64_t k) {
            return 0.5 * static_cast<double>(k) + std::sqrt(static_cast<double>(k) + 1.0);
        },
        0.5, 20000);
    const auto bounds = affine_sandwich(rule, 0);
    int nested = 0;
    for (int seed = 0; seed < 100; ++seed) {
        const auto graphs = coupled_generate({bounds.lower, rule, bounds.upper}, 1000, seed);
        const std::set<Edge> mid(graphs[1].edges.begin(), graphs[1].edges.end());
        const std::set<Edge> top(graphs[2].edges.begin(), graphs[2].edges.end());
        bool ok = true;
        for (const auto& e : graphs[0].edges) ok = ok && mid.count(e) > 0;
        for (const auto& e : graphs[1].edges) ok = ok && top.count(e) > 0;
        nested += ok;
    }
    return {nested == 100, fmt("%d/100 seeds fully nested", nested)};
}

// 14. martingale identity for the expected attachment rate
Outcome martingale_identity() {
    const auto rule = AttachmentRule::affine(0.5, 1.0);
    bool pass = true;
    std::ostringstream detail;
    for (auto [m, n] : std::vector<std::pair<Vertex, Vertex>>{{10, 1000}, {100, 10000}}) {
        const int reps = 20000;
        std::vector<double> values(reps);
        parallel_for(reps, [&](std::size_t r) {
            values[r] = rule(simulate_indegree(rule, m, n, derive_seed(1400, m, r)));
        });
        double sum = 0, sq = 0;
        for (double v : values) {
            sum += v;
            sq += v * v;
        }
        const double mean = sum / reps;
        const double se = std::sqrt((sq / reps - mean * mean) / reps);
        double expected = rule(0);
        for (Vertex i = m; i < n; ++i) expected *= 1.0 + rule.gamma() / i;
        const double z = (mean - expected) / se;
        detail << fmt(" (m=%u,n=%u): z=%.2f;", m, n, z);
        pass = pass && std::abs(z) <= 4.0;
    }
    return {pass, detail.str() + " limit |z| <= 4"};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria = {
        {1, "companion-operator eigenvalue log(1/eps)", companion_eigenvalue},
        {2, "gamma=1/2 spectral radius inside the affine sandwich", half_gamma_sandwich},
        {3, "gamma>1/2 threshold bracket and leading constant", pc_bounds_bracket},
        {4, "rho(pA) = p rho(A)", p_linearity},
        {5, "giant fraction matches branching-process survival", giant_vs_survival},
        {6, "bisection bracket contains the spectral threshold", threshold_cross_check},
        {7, "degree law in total variation and tail slope", degree_law},
        {8, "maximal indegree / log n constant", max_degree_scaling},
        {9, "jump-process law", jump_process_law},
        {10, "distance lower bound violations", distance_bound},
        {11, "IRG closed forms", irg_closed_forms},
        {12, "two universality classes", universality_classes},
        {13, "sandwich coupling nesting", coupling_nesting},
        {14, "martingale identity", martingale_identity},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (!wanted.empty() && !wanted.count(criterion.id)) continue;
        const auto started = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                .count();
        std::printf("criterion %2d: %s  %s -- %s [%.1f s]\n", criterion.id,
                    outcome.pass ? "PASS" : "FAIL", criterion.summary,
                    outcome.detail.c_str(), seconds);
        std::fflush(stdout);
        failures += !outcome.pass;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
