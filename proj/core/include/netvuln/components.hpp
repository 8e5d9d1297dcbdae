#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netvuln/pa_graph.hpp"
#include "netvuln/rules.hpp"

namespace netvuln {

struct ComponentSummary {
    std::vector<std::uint64_t> sizes;   // descending
    std::uint64_t largest = 0;
    std::uint64_t alive_count = 0;
};

// Exact component sizes of the undirected alive subgraph (union-find).
// Self-loops and parallel edges are harmless, so configuration-model
// multigraphs can be analysed directly.
ComponentSummary largest_component(Vertex n, std::span<const Edge> edges,
                                   const VertexMask& mask);
ComponentSummary largest_component(const PaGraph& graph, const VertexMask& mask);

struct MonteCarloMean {
    double mean = 0.0;
    double se = 0.0;
    std::uint32_t replicas = 0;
};

// Monte Carlo estimate of |C_n| / (p * (n - floor(eps*n))), the largest
// component normalized by the expected number of surviving vertices.
MonteCarloMean giant_fraction(const AttachmentRule& rule, Vertex n, double eps,
                              double p, std::uint32_t replicas, std::uint64_t seed);

enum class PcMethod { Spectral, MonteCarloBisect, IbpBisect };

struct PcEstimate {
    double p_lo = 0.0;
    double p_hi = 1.0;
    PcMethod method = PcMethod::MonteCarloBisect;
    std::uint32_t replicas = 0;
    Vertex n_used = 0;
    double tau_g = 0.0;
    bool no_giant_at_p1 = false;
};

// Bisection for the critical retention probability of the damaged network.
// "Giant" at p means: the normalized fraction exceeds tau_g at the largest n
// of the schedule and does not decay along the schedule beyond Monte Carlo
// noise. Graphs are generated once per n and re-percolated per probe.
PcEstimate pc_bisect(const AttachmentRule& rule, const std::vector<Vertex>& n_schedule,
                     double eps, std::uint32_t replicas, double tau_g,
                     std::uint64_t seed);

struct DistanceSample {
    Vertex u = 0;
    Vertex v = 0;
    std::optional<std::uint32_t> distance;  // empty when unreachable
};

// BFS distances between uniformly sampled alive vertex pairs.
std::vector<DistanceSample> sample_distances(Vertex n, std::span<const Edge> edges,
                                             const VertexMask& mask, std::uint32_t pairs,
                                             std::uint64_t seed);
std::vector<DistanceSample> sample_distances(const PaGraph& graph, const VertexMask& mask,
                                             std::uint32_t pairs, std::uint64_t seed);

// Fraction of reachable pairs (u != v) shorter than the theoretical lower
// bound (1-delta) * log n / log(1/pc_eps).
double distance_bound_violation(std::span<const DistanceSample> distances, Vertex n,
                                double pc_eps, double delta);

}  // namespace netvuln
