#include "netvuln/components.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netvuln/errors.hpp"
#include "netvuln/parallel.hpp"
#include "netvuln/rng.hpp"

namespace netvuln {
namespace {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

  private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

// Adjacency over alive vertices in CSR form.
struct AliveAdjacency {
    std::vector<std::uint32_t> offset;
    std::vector<Vertex> neighbor;

    AliveAdjacency(Vertex n, std::span<const Edge> edges, const VertexMask& mask) {
        offset.assign(n + 2, 0);
        for (const auto& [c, p] : edges)
            if (mask.alive[c] && mask.alive[p] && c != p) {
                ++offset[c + 1];
                ++offset[p + 1];
            }
        for (Vertex v = 1; v <= n; ++v) offset[v + 1] += offset[v];
        neighbor.resize(offset[n + 1]);
        std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
        for (const auto& [c, p] : edges)
            if (mask.alive[c] && mask.alive[p] && c != p) {
                neighbor[cursor[c]++] = p;
                neighbor[cursor[p]++] = c;
            }
    }
};

std::vector<Vertex> alive_labels(const VertexMask& mask) {
    std::vector<Vertex> out;
    out.reserve(mask.n);
    for (Vertex v = 1; v <= mask.n; ++v)
        if (mask.alive[v]) out.push_back(v);
    return out;
}

}  // namespace

ComponentSummary largest_component(Vertex n, std::span<const Edge> edges,
                                   const VertexMask& mask) {
    UnionFind uf(n + 1);
    for (const auto& [c, p] : edges)
        if (mask.alive[c] && mask.alive[p]) uf.unite(c, p);

    std::vector<std::uint64_t> count(n + 1, 0);
    ComponentSummary out;
    for (Vertex v = 1; v <= n; ++v)
        if (mask.alive[v]) {
            ++count[uf.find(v)];
            ++out.alive_count;
        }
    for (Vertex v = 1; v <= n; ++v)
        if (count[v] > 0) out.sizes.push_back(count[v]);
    std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
    out.largest = out.sizes.empty() ? 0 : out.sizes.front();
    return out;
}

ComponentSummary largest_component(const PaGraph& graph, const VertexMask& mask) {
    return largest_component(graph.n, graph.edges, mask);
}

MonteCarloMean giant_fraction(const AttachmentRule& rule, Vertex n, double eps,
                              double p, std::uint32_t replicas, std::uint64_t seed) {
    if (!(p > 0.0)) throw PZeroError("giant_fraction requires p > 0");
    if (!(p <= 1.0)) throw POutOfRange("giant_fraction requires p <= 1");
    const auto cut = static_cast<Vertex>(std::floor(eps * static_cast<double>(n)));
    const double expected_alive = p * static_cast<double>(n - cut);

    std::vector<double> values(replicas);
    parallel_for(replicas, [&](std::size_t r) {
        const std::uint64_t sub = derive_seed(seed, 0, r);
        PaGraph g = generate(rule, n, sub);
        VertexMask mask = eps > 0.0 ? damage(g, eps) : VertexMask::all_alive(n);
        if (p < 1.0) mask = percolate(mask, p, derive_seed(seed, 1, r));
        const auto summary = largest_component(g, mask);
        values[r] = static_cast<double>(summary.largest) / expected_alive;
    });

    MonteCarloMean out;
    out.replicas = replicas;
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / replicas;
    if (replicas > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.se = std::sqrt(ss / (replicas - 1.0) / replicas);
    }
    return out;
}

namespace {

struct FractionPoint {
    double mean;
    double se;
};

// giant_fraction over pre-generated graphs, re-percolated per probe p.
FractionPoint fraction_on_cached(const std::vector<PaGraph>& graphs, double eps,
                                 double p, std::uint64_t seed) {
    std::vector<double> values(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t r) {
        const auto& g = graphs[r];
        const auto cut = static_cast<Vertex>(std::floor(eps * static_cast<double>(g.n)));
        VertexMask mask = damage(g, eps);
        if (p < 1.0) mask = percolate(mask, p, derive_seed(seed, 1, r));
        const auto summary = largest_component(g, mask);
        values[r] =
            static_cast<double>(summary.largest) / (p * static_cast<double>(g.n - cut));
    });
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double se = values.size() > 1
                          ? std::sqrt(ss / (values.size() - 1.0) / values.size())
                          : 0.0;
    return {mean, se};
}

enum class Verdict { Giant, NoGiant, Inconclusive };

// Giant at p means: the normalized fraction clears tau_g at the largest n
// and does not collapse along the schedule. A decaying-but-large fraction is
// extrapolated one step before being written off; a fraction that is far
// above tau_g yet collapsing is contradictory and reported as inconclusive.
Verdict probe_giant(const std::vector<std::vector<PaGraph>>& cache, double eps,
                    double p, double tau_g, std::uint64_t seed) {
    std::vector<FractionPoint> pts;
    pts.reserve(cache.size());
    for (const auto& graphs : cache)
        pts.push_back(fraction_on_cached(graphs, eps, p, seed));
    const double last = pts.back().mean;
    if (last <= tau_g) return Verdict::NoGiant;
    if (pts.size() == 1) return Verdict::Giant;

    bool non_decreasing = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double slack = 3.0 * (pts[i].se + pts[i + 1].se);
        if (pts[i + 1].mean < pts[i].mean - slack) non_decreasing = false;
    }
    if (non_decreasing) return Verdict::Giant;

    const double prev = pts[pts.size() - 2].mean;
    const double ratio = prev > 0.0 ? last / prev : 0.0;
    if (last * ratio * ratio <= tau_g) return Verdict::NoGiant;
    if (last > 10.0 * tau_g) return Verdict::Inconclusive;
    return Verdict::Giant;
}

}  // namespace

PcEstimate pc_bisect(const AttachmentRule& rule, const std::vector<Vertex>& n_schedule,
                     double eps, std::uint32_t replicas, double tau_g,
                     std::uint64_t seed) {
    if (!(tau_g > 0.0 && tau_g < 0.5)) throw Error("pc_bisect requires tau_g in (0,0.5)");
    if (n_schedule.empty() || !std::is_sorted(n_schedule.begin(), n_schedule.end()))
        throw Error("pc_bisect requires an increasing n schedule");

    // one set of graphs per schedule entry, shared across all probes
    std::vector<std::vector<PaGraph>> cache(n_schedule.size());
    for (std::size_t i = 0; i < n_schedule.size(); ++i) {
        cache[i].resize(replicas);
        parallel_for(replicas, [&](std::size_t r) {
            cache[i][r] = generate(rule, n_schedule[i], derive_seed(seed, 100 + i, r));
        });
    }

    PcEstimate est;
    est.method = PcMethod::MonteCarloBisect;
    est.replicas = replicas;
    est.n_used = n_schedule.back();
    est.tau_g = tau_g;

    switch (probe_giant(cache, eps, 1.0, tau_g, seed)) {
        case Verdict::NoGiant:
            est.p_lo = est.p_hi = 1.0;
            est.no_giant_at_p1 = true;
            return est;
        case Verdict::Inconclusive:
            throw InconclusiveError("pc_bisect: monotonicity test failed at p=1");
        case Verdict::Giant:
            break;
    }

    double lo = 0.0, hi = 1.0;
    while (hi - lo > 0x1p-10) {
        const double mid = 0.5 * (lo + hi);
        switch (probe_giant(cache, eps, mid, tau_g, seed)) {
            case Verdict::Giant:
                hi = mid;
                break;
            case Verdict::NoGiant:
                lo = mid;
                break;
            case Verdict::Inconclusive:
                throw InconclusiveError(
                    "pc_bisect: fraction exceeds tau_g but decays along the n schedule at p=" +
                    std::to_string(mid));
        }
    }
    est.p_lo = lo;
    est.p_hi = hi;
    return est;
}

std::vector<DistanceSample> sample_distances(Vertex n, std::span<const Edge> edges,
                                             const VertexMask& mask, std::uint32_t pairs,
                                             std::uint64_t seed) {
    const auto alive = alive_labels(mask);
    if (alive.size() < 2) throw TooFewAliveError("sample_distances needs >= 2 alive vertices");
    const AliveAdjacency adj(n, edges, mask);

    std::vector<DistanceSample> out(pairs);
    Rng pick(mix64(seed ^ 0x64697374616e6365ULL));
    std::vector<std::pair<Vertex, Vertex>> chosen(pairs);
    for (auto& c : chosen)
        c = {alive[pick.below(alive.size())], alive[pick.below(alive.size())]};

    parallel_for(pairs, [&](std::size_t i) {
        const auto [u, v] = chosen[i];
        DistanceSample s;
        s.u = u;
        s.v = v;
        if (u == v) {
            s.distance = 0;
        } else {
            // BFS from u with early exit at v
            std::vector<std::uint32_t> dist(n + 1, UINT32_MAX);
            std::vector<Vertex> frontier{u}, next;
            dist[u] = 0;
            std::uint32_t d = 0;
            while (!frontier.empty() && !s.distance) {
                ++d;
                next.clear();
                for (Vertex x : frontier) {
                    for (std::uint32_t e = adj.offset[x]; e < adj.offset[x + 1]; ++e) {
                        const Vertex y = adj.neighbor[e];
                        if (dist[y] != UINT32_MAX) continue;
                        dist[y] = d;
                        if (y == v) {
                            s.distance = d;
                            break;
                        }
                        next.push_back(y);
                    }
                    if (s.distance) break;
                }
                frontier.swap(next);
            }
        }
        out[i] = s;
    });
    return out;
}

std::vector<DistanceSample> sample_distances(const PaGraph& graph, const VertexMask& mask,
                                             std::uint32_t pairs, std::uint64_t seed) {
    return sample_distances(graph.n, graph.edges, mask, pairs, seed);
}

double distance_bound_violation(std::span<const DistanceSample> distances, Vertex n,
                                double pc_eps, double delta) {
    if (!(pc_eps > 0.0 && pc_eps < 1.0))
        throw EpsOutOfRange("distance_bound_violation requires pc_eps in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw Error("distance_bound_violation requires delta in (0,1)");
    const double bound =
        (1.0 - delta) * std::log(static_cast<double>(n)) / std::log(1.0 / pc_eps);
    std::uint64_t eligible = 0, violating = 0;
    for (const auto& s : distances) {
        if (s.u == s.v || !s.distance) continue;
        ++eligible;
        if (static_cast<double>(*s.distance) < bound) ++violating;
    }
    return eligible == 0 ? 0.0
                         : static_cast<double>(violating) / static_cast<double>(eligible);
}

}  // namespace netvuln
