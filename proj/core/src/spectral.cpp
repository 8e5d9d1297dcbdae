#include "netvuln/spectral.hpp"

#include <cmath>

#include "netvuln/errors.hpp"

namespace netvuln::spectral {
namespace {

void check_params(double eps, double gamma, double beta) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("operator requires eps in (0,1)");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw GammaRangeError("operator requires gamma in [0,1)");
    if (!(beta > 0.0)) throw Error("operator requires beta > 0");
}

std::vector<double> make_nodes(double log_eps, std::uint32_t n_cells, double h) {
    std::vector<double> nodes(n_cells);
    for (std::uint32_t i = 0; i < n_cells; ++i)
        nodes[i] = log_eps + (static_cast<double>(i) + 0.5) * h;
    return nodes;
}

void matvec(const OperatorGrid& grid, const double* v, double* out) {
    const std::size_t dim = grid.dim;
    for (std::size_t i = 0; i < dim; ++i) {
        const double* row = grid.kernel.data() + i * dim;
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
}

}  // namespace

OperatorGrid assemble(double eps, double gamma, double beta, std::uint32_t n_cells) {
    check_params(eps, gamma, beta);
    if (n_cells < 8) throw Error("assemble requires at least 8 cells");

    OperatorGrid grid;
    grid.eps = eps;
    grid.gamma = gamma;
    grid.beta = beta;
    grid.cells = n_cells;
    grid.dim = 2ull * n_cells;
    const double log_eps = std::log(eps);
    grid.weight = -log_eps / n_cells;
    grid.nodes = make_nodes(log_eps, n_cells, grid.weight);
    grid.kernel.assign(grid.dim * grid.dim, 0.0);

    const double h = grid.weight;
    // factorized kernel entries: e^{c(t_j - s_i)} = col[j] * row[i]
    std::vector<double> left_col(n_cells), left_row(n_cells);
    std::vector<double> right_col(n_cells), right_row(n_cells);
    for (std::uint32_t i = 0; i < n_cells; ++i) {
        left_col[i] = std::exp((1.0 - gamma) * grid.nodes[i]);
        left_row[i] = 1.0 / left_col[i];
        right_col[i] = std::exp(gamma * grid.nodes[i]);
        right_row[i] = 1.0 / right_col[i];
    }

    for (std::uint32_t mark = 0; mark < 2; ++mark) {
        const double a_mark = mark == 0 ? beta : gamma + beta;
        for (std::uint32_t i = 0; i < n_cells; ++i) {
            double* row = grid.kernel.data() + (mark * n_cells + i) * grid.dim;
            // left offspring (t <= s), children of mark Right: column block 1
            for (std::uint32_t j = 0; j < i; ++j)
                row[n_cells + j] = h * beta * left_col[j] * left_row[i];
            row[n_cells + i] = 0.5 * h * beta;
            // right offspring (t >= s), children of mark Left: column block 0
            row[i] = 0.5 * h * a_mark;
            for (std::uint32_t j = i + 1; j < n_cells; ++j)
                row[j] = h * a_mark * right_col[j] * right_row[i];
        }
    }
    return grid;
}

OperatorGrid assemble_simple(double eps, std::uint32_t n_cells) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("operator requires eps in (0,1)");
    if (n_cells < 8) throw Error("assemble requires at least 8 cells");

    OperatorGrid grid;
    grid.eps = eps;
    grid.gamma = 0.5;
    grid.beta = 1.0;
    grid.cells = n_cells;
    grid.simple = true;
    grid.dim = n_cells;
    const double log_eps = std::log(eps);
    grid.weight = -log_eps / n_cells;
    grid.nodes = make_nodes(log_eps, n_cells, grid.weight);
    grid.kernel.assign(grid.dim * grid.dim, 0.0);

    // kernel e^{(t-s)/2} on both sides of the diagonal
    for (std::uint32_t i = 0; i < n_cells; ++i) {
        double* row = grid.kernel.data() + i * grid.dim;
        for (std::uint32_t j = 0; j < n_cells; ++j)
            row[j] = grid.weight * std::exp(0.5 * (grid.nodes[j] - grid.nodes[i]));
    }
    return grid;
}

SpectralResult spectral_radius(const OperatorGrid& grid, double tol) {
    const std::size_t dim = grid.dim;
    std::vector<double> v(dim, 1.0), w(dim);
    double rho = 0.0;
    constexpr std::uint32_t kMaxIter = 100000;
    for (std::uint32_t iter = 1; iter <= kMaxIter; ++iter) {
        matvec(grid, v.data(), w.data());
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw NoConvergenceError("power iteration collapsed to zero");
        double vnorm = 0.0;
        for (double x : v) vnorm += x * x;
        const double next = norm / std::sqrt(vnorm);
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / norm;
        if (iter > 1 && std::abs(next - rho) <= tol * next) {
            rho = next;
            // residual in the sup norm
            matvec(grid, v.data(), w.data());
            double res = 0.0, vmax = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                res = std::max(res, std::abs(w[i] - rho * v[i]));
                vmax = std::max(vmax, std::abs(v[i]));
            }
            SpectralResult out;
            out.rho = rho;
            out.residual = res / vmax;
            out.n_used = grid.cells;
            out.iterations = iter;
            return out;
        }
        rho = next;
    }
    throw NoConvergenceError("power iteration did not converge within 1e5 iterations");
}

SpectralResult spectral_radius_refined(double eps, double gamma, double beta,
                                       std::uint32_t n_cells, bool simple, double tol) {
    const std::uint32_t coarse = n_cells / 2;
    const OperatorGrid g1 =
        simple ? assemble_simple(eps, coarse) : assemble(eps, gamma, beta, coarse);
    const OperatorGrid g2 =
        simple ? assemble_simple(eps, n_cells) : assemble(eps, gamma, beta, n_cells);
    const SpectralResult r1 = spectral_radius(g1, tol);
    SpectralResult r2 = spectral_radius(g2, tol);
    // midpoint discretization converges at second order
    r2.rho = r2.rho + (r2.rho - r1.rho) / 3.0;
    r2.extrapolated = true;
    return r2;
}

std::vector<double> apply(const OperatorGrid& grid, std::span<const double> g) {
    if (g.size() != grid.dim)
        throw DimensionMismatch("apply: vector length does not match grid dimension");
    std::vector<double> out(grid.dim);
    matvec(grid, g.data(), out.data());
    return out;
}

double pc_spectral(double eps, double gamma, double beta, double tol) {
    check_params(eps, gamma, beta);
    std::uint32_t n_cells = 512;
    double prev = 0.0;
    for (;;) {
        const SpectralResult r =
            spectral_radius_refined(eps, gamma, beta, n_cells, false);
        const double pc = std::min(1.0 / r.rho, 1.0);
        if (prev != 0.0 && std::abs(pc - prev) <= tol) return pc;
        if (n_cells >= 4096) return pc;  // memory cap; extrapolation carries the rest
        prev = pc;
        n_cells *= 2;
    }
}

PcBounds pc_bounds(double eps, double gamma, double beta) {
    check_params(eps, gamma, beta);
    if (gamma < 0.5) throw GammaRangeError("pc_bounds requires gamma >= 1/2");
    PcBounds b;
    if (gamma == 0.5) {
        const double log_inv = std::log(1.0 / eps);
        b.lower = 1.0 / ((gamma + beta) * log_inv);
        b.upper = 1.0 / (beta * log_inv);
        return b;
    }
    const double lead = (2.0 * gamma - 1.0) / std::sqrt(beta * (gamma + beta)) *
                        std::pow(eps, gamma - 0.5);
    const double x = (1.0 - 2.0 * gamma) * std::log(eps) * std::pow(eps, gamma - 0.5);
    b.lower = lead / std::sqrt(1.0 + x + x * x);
    b.upper = lead / (1.0 - std::pow(eps, gamma - 0.5));
    return b;
}

}  // namespace netvuln::spectral
