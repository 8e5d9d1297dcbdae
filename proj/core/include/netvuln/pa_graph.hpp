#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "netvuln/rules.hpp"

namespace netvuln {

using Vertex = std::uint32_t;               // 1-indexed labels
using Edge = std::pair<Vertex, Vertex>;     // (child, parent), child > parent

// Preferential attachment graph after n steps. Edges point from the younger
// to the older vertex; for connectivity questions the graph is undirected.
struct PaGraph {
    Vertex n = 0;
    std::vector<Edge> edges;                // sorted by child, then parent
    std::vector<std::uint32_t> indegree;    // index 0 unused, labels 1..n

    std::uint32_t max_indegree(Vertex first_label = 1) const;
};

enum class MaskKind { Damage, Percolation, Composite };

// Which vertices survive an attack and/or percolation. Masks compose by
// conjunction.
struct VertexMask {
    Vertex n = 0;
    std::vector<std::uint8_t> alive;        // index 0 unused
    MaskKind kind = MaskKind::Composite;
    double eps = 0.0;                       // Damage parameter, if any
    double p = 1.0;                         // Percolation parameter, if any
    std::uint64_t seed = 0;

    std::uint64_t alive_count() const;
    static VertexMask all_alive(Vertex n);
};

// Runs the attachment dynamics: vertex t+1 connects to each existing m <= t
// independently with probability f(indegree of m at time t)/t, clamped at 1.
// Exact in law; sampling is grouped by indegree so large n stays tractable.
PaGraph generate(const AttachmentRule& rule, Vertex n, std::uint64_t seed);

// Indegree of a single vertex m at time n, simulated in isolation (the
// indegree evolutions of distinct vertices are independent).
std::uint32_t simulate_indegree(const AttachmentRule& rule, Vertex m, Vertex n,
                                std::uint64_t seed);

// Targeted attack: kills labels 1..floor(eps*n).
VertexMask damage(const PaGraph& graph, double eps);
VertexMask damage_labels(Vertex n, double eps);

// Vertex percolation with retention probability p. Uniforms are keyed by
// (seed, label), so masks with shared seed are monotone in p.
VertexMask percolate(const PaGraph& graph, double p, std::uint64_t seed);
VertexMask percolate(const VertexMask& mask, double p, std::uint64_t seed);

// Generates one graph per rule from a single uniform per potential edge
// (keyed by seed, child, parent). For pointwise-ordered, non-decreasing
// rules the edge sets are nested. Quadratic in n; intended for moderate n.
std::vector<PaGraph> coupled_generate(const std::vector<AttachmentRule>& rules,
                                      Vertex n, std::uint64_t seed);

// Edge-list and mask file formats ("# netvuln edges v1 ...").
void write_edges(std::ostream& out, const PaGraph& graph);
PaGraph read_edges(std::istream& in);
void write_mask(std::ostream& out, const VertexMask& mask);
VertexMask read_mask(std::istream& in);

}  // namespace netvuln
