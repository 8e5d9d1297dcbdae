#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "netvuln/pa_graph.hpp"

namespace netvuln::alt {

// Degree law with finite support, stored as a pmf over 0..k_max.
struct DegreeLaw {
    std::vector<double> pmf;

    double tail(std::uint64_t k) const;              // P(D > k)
    std::uint64_t quantile_tail(double u) const;     // inf{k : tail(k) <= u}
    double mean() const;
    // E[D(D-1) 1{D <= m}]
    double second_factorial_below(std::uint64_t m) const;
    std::uint64_t sample(double u) const;            // inverse transform

    // power-law tail P(D > k) = k^{-1/gamma} for 1 <= k < k_max
    static DegreeLaw power(double gamma, std::uint64_t k_max);
    static DegreeLaw from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct Multigraph {
    Vertex n = 0;
    std::vector<Edge> edges;                 // (hi, lo) pairs; self-loops allowed
    std::vector<std::uint32_t> degree;       // prescribed degrees, 1-indexed
    bool padded_half_edge = false;           // odd degree sum repaired
};

// Uniform half-edge matching. An odd degree sum is repaired by granting one
// extra half-edge to a uniformly chosen vertex (recorded in the output).
Multigraph cm_generate(std::span<const std::uint32_t> degrees, std::uint64_t seed);

// Removes exactly floor(eps*n) vertices, highest degree first, ties broken
// by smallest label.
VertexMask cm_attack(const Multigraph& graph, double eps);

// Critical retention probability of the attacked configuration model:
//   E D / (E[D(D-1) 1{D <= m}] - m(m-1)(eps - P(D > m))),  m = [1-F]^{-1}(eps).
double cm_pc(const DegreeLaw& law, double eps);

enum class KernelKind { ChungLu, PrefAttach };

// Symmetric connection kernels on (0,1]^2: the factorizing Chung-Lu kernel
// x^{-gamma} y^{-gamma} and the strongly inhomogeneous kernel
// (x ^ y)^{-gamma} (x v y)^{-(1-gamma)}.
struct Kernel {
    KernelKind kind = KernelKind::ChungLu;
    double gamma = 0.5;

    double operator()(double x, double y) const;
};

struct IrgGraph {
    Vertex n = 0;
    std::vector<Edge> edges;
};

// Independent edges with probability kappa(i/n, j/n)/n, clamped at 1.
IrgGraph irg_generate(const Kernel& kernel, Vertex n, std::uint64_t seed);

// Reciprocal L2(eps,1) operator norm of the kernel, by midpoint Nystrom
// discretization, power iteration and grid doubling.
double irg_pc(const Kernel& kernel, double eps, std::uint32_t n_cells);

// Closed-form Chung-Lu threshold: reciprocal of int_eps^1 x^{-2 gamma} dx.
double cl_pc_closed(double eps, double gamma);

}  // namespace netvuln::alt
