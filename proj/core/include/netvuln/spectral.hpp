#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace netvuln::spectral {

// Nystrom discretization of the mean-offspring operator on the type space
// [log eps, 0] x {Left, Right}. Uniform midpoint grid in the location; rows
// and columns are indexed (cell, mark) with mark Left first. The column
// block of child mark Right holds the left-offspring kernel
// beta e^{(1-gamma)(t-s)} 1[t <= s]; the block of child mark Left holds the
// right-offspring kernel a_mark e^{gamma(t-s)} 1[t >= s] with a_Left = beta
// and a_Right = gamma + beta. The cell containing t = s contributes half
// weight to each side.
struct OperatorGrid {
    double eps = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    std::uint32_t cells = 0;            // N, per mark
    bool simple = false;                // companion operator, single mark
    std::vector<double> nodes;          // cell midpoints, ascending
    double weight = 0.0;                // uniform cell width
    std::vector<double> kernel;         // dense dim x dim, row major
    std::size_t dim = 0;                // 2N, or N for the companion operator
};

OperatorGrid assemble(double eps, double gamma, double beta, std::uint32_t n_cells);

// Companion operator with kernel e^{(t-s)/2} in both directions and no
// marks; its principal eigenpair is known in closed form at gamma = 1/2.
OperatorGrid assemble_simple(double eps, std::uint32_t n_cells);

struct SpectralResult {
    double rho = 0.0;
    double residual = 0.0;       // ||Mv - rho v||_inf / ||v||_inf at n_used
    std::uint32_t n_used = 0;    // finest per-mark cell count involved
    bool extrapolated = false;
    std::uint32_t iterations = 0;
};

// Dominant eigenvalue by power iteration from the all-ones vector; the
// operator is strictly positive, so the principal eigenvalue is simple.
SpectralResult spectral_radius(const OperatorGrid& grid, double tol = 1e-12);

// Power iteration at n_cells/2 and n_cells, Richardson-extrapolated.
SpectralResult spectral_radius_refined(double eps, double gamma, double beta,
                                       std::uint32_t n_cells, bool simple = false,
                                       double tol = 1e-12);

// One application of the discretized operator.
std::vector<double> apply(const OperatorGrid& grid, std::span<const double> g);

// Critical retention probability 1/rho_eps(A), clamped at 1.
double pc_spectral(double eps, double gamma, double beta, double tol = 1e-4);

struct PcBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Closed-form bracket for 1/rho_eps(A); requires gamma >= 1/2.
PcBounds pc_bounds(double eps, double gamma, double beta);

}  // namespace netvuln::spectral
