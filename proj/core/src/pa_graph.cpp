#include "netvuln/pa_graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "netvuln/errors.hpp"
#include "netvuln/rng.hpp"

namespace netvuln {
namespace {

constexpr std::uint64_t kGenerateTag = 0x67656e2d70615f67ULL;
constexpr std::uint64_t kPercolateTag = 0x706572636f6c6174ULL;
constexpr std::uint64_t kIndegreeTag = 0x696e646567726565ULL;

// Vertices bucketed by current indegree; O(1) moves between buckets.
class DegreeBuckets {
  public:
    explicit DegreeBuckets(Vertex n) : pos_(n + 1, 0) { buckets_.emplace_back(); }

    void insert_fresh(Vertex v) {
        pos_[v] = static_cast<std::uint32_t>(buckets_[0].size());
        buckets_[0].push_back(v);
    }

    void promote(Vertex v, std::uint32_t k) {
        auto& from = buckets_[k];
        const std::uint32_t at = pos_[v];
        const Vertex last = from.back();
        from[at] = last;
        pos_[last] = at;
        from.pop_back();
        if (k + 1 >= buckets_.size()) buckets_.emplace_back();
        auto& to = buckets_[k + 1];
        pos_[v] = static_cast<std::uint32_t>(to.size());
        to.push_back(v);
    }

    // draw `count` distinct members of bucket k uniformly (partial
    // Fisher-Yates, position index kept consistent)
    void sample_members(std::uint32_t k, std::uint64_t count, Rng& rng,
                        std::vector<Vertex>& out) {
        auto& members = buckets_[k];
        const std::uint64_t nk = members.size();
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::uint64_t j = rng.below(nk - i);
            const std::uint64_t back = nk - 1 - i;
            std::swap(members[j], members[back]);
            pos_[members[j]] = static_cast<std::uint32_t>(j);
            pos_[members[back]] = static_cast<std::uint32_t>(back);
            out.push_back(members[back]);
        }
    }

    std::uint32_t max_degree() const {
        return static_cast<std::uint32_t>(buckets_.size()) - 1;
    }
    std::vector<Vertex>& bucket(std::uint32_t k) { return buckets_[k]; }

  private:
    std::vector<std::vector<Vertex>> buckets_;
    std::vector<std::uint32_t> pos_;
};

}  // namespace

std::uint32_t PaGraph::max_indegree(Vertex first_label) const {
    std::uint32_t best = 0;
    for (Vertex v = first_label; v <= n; ++v) best = std::max(best, indegree[v]);
    return best;
}

std::uint64_t VertexMask::alive_count() const {
    std::uint64_t c = 0;
    for (Vertex v = 1; v <= n; ++v) c += alive[v];
    return c;
}

VertexMask VertexMask::all_alive(Vertex n) {
    VertexMask m;
    m.n = n;
    m.alive.assign(n + 1, 1);
    m.alive[0] = 0;
    return m;
}

PaGraph generate(const AttachmentRule& rule, Vertex n, std::uint64_t seed) {
    if (n < 1) throw Error("generate requires n >= 1");
    PaGraph g;
    g.n = n;
    g.indegree.assign(n + 1, 0);
    if (n == 1) return g;
    g.edges.reserve(static_cast<std::size_t>(
        static_cast<double>(n) * rule(0) / std::max(1e-9, 1.0 - rule.gamma()) + 16));

    Rng rng(mix64(seed ^ kGenerateTag));
    DegreeBuckets buckets(n);
    buckets.insert_fresh(1);

    std::vector<double> f_of;           // cached rule values by indegree
    f_of.push_back(rule(0));
    std::vector<Vertex> hits;

    for (Vertex t = 1; t < n; ++t) {
        const Vertex child = t + 1;
        const double inv_t = 1.0 / static_cast<double>(t);
        hits.clear();
        const std::uint32_t top = buckets.max_degree();
        while (f_of.size() <= top) f_of.push_back(rule(f_of.size()));
        for (std::uint32_t k = 0; k <= top; ++k) {
            const std::uint64_t nk = buckets.bucket(k).size();
            if (nk == 0) continue;
            const double p = std::min(f_of[k] * inv_t, 1.0);
            const std::uint64_t x = rng.binomial(nk, p);
            buckets.sample_members(k, x, rng, hits);
        }
        std::sort(hits.begin(), hits.end());
        for (Vertex m : hits) {
            g.edges.emplace_back(child, m);
            buckets.promote(m, g.indegree[m]);
            g.indegree[m] += 1;
        }
        buckets.insert_fresh(child);
    }
    return g;
}

std::uint32_t simulate_indegree(const AttachmentRule& rule, Vertex m, Vertex n,
                                std::uint64_t seed) {
    if (m < 1 || m > n) throw Error("simulate_indegree requires 1 <= m <= n");
    Rng rng(mix64(seed ^ kIndegreeTag));
    std::uint32_t z = 0;
    for (Vertex t = m; t < n; ++t) {
        const double p = std::min(rule(z) / static_cast<double>(t), 1.0);
        if (rng.uniform() < p) ++z;
    }
    return z;
}

VertexMask damage_labels(Vertex n, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw EpsOutOfRange("damage requires eps in (0,1)");
    VertexMask m = VertexMask::all_alive(n);
    m.kind = MaskKind::Damage;
    m.eps = eps;
    const auto cut = static_cast<Vertex>(std::floor(eps * static_cast<double>(n)));
    for (Vertex v = 1; v <= cut && v <= n; ++v) m.alive[v] = 0;
    return m;
}

VertexMask damage(const PaGraph& graph, double eps) { return damage_labels(graph.n, eps); }

namespace {

VertexMask percolate_impl(VertexMask base, double p, std::uint64_t seed, MaskKind kind) {
    if (!(p >= 0.0 && p <= 1.0)) throw POutOfRange("percolate requires p in [0,1]");
    for (Vertex v = 1; v <= base.n; ++v) {
        if (!base.alive[v]) continue;
        if (keyed_uniform(seed ^ kPercolateTag, v) >= p) base.alive[v] = 0;
    }
    base.kind = kind;
    base.p = p;
    base.seed = seed;
    return base;
}

}  // namespace

VertexMask percolate(const PaGraph& graph, double p, std::uint64_t seed) {
    return percolate_impl(VertexMask::all_alive(graph.n), p, seed, MaskKind::Percolation);
}

VertexMask percolate(const VertexMask& mask, double p, std::uint64_t seed) {
    return percolate_impl(mask, p, seed, MaskKind::Composite);
}

std::vector<PaGraph> coupled_generate(const std::vector<AttachmentRule>& rules,
                                      Vertex n, std::uint64_t seed) {
    if (rules.empty()) throw Error("coupled_generate requires at least one rule");
    constexpr std::uint64_t probe = 100000;
    for (std::size_t i = 0; i + 1 < rules.size(); ++i)
        if (!rules[i].pointwise_leq(rules[i + 1], probe))
            throw UnorderedRulesError("rules are not pointwise ordered on the probe range");
    for (const auto& r : rules)
        if (!r.non_decreasing(probe))
            throw UnorderedRulesError("coupled_generate requires non-decreasing rules");

    std::vector<PaGraph> graphs(rules.size());
    for (auto& g : graphs) {
        g.n = n;
        g.indegree.assign(n + 1, 0);
    }
    for (Vertex t = 1; t < n; ++t) {
        const Vertex child = t + 1;
        const double inv_t = 1.0 / static_cast<double>(t);
        for (Vertex m = 1; m <= t; ++m) {
            const double u = keyed_uniform(seed, child, m);
            for (std::size_t i = 0; i < rules.size(); ++i) {
                auto& g = graphs[i];
                const double p = std::min(rules[i](g.indegree[m]) * inv_t, 1.0);
                if (u < p) {
                    g.edges.emplace_back(child, m);
                    g.indegree[m] += 1;
                }
            }
        }
    }
    return graphs;
}

void write_edges(std::ostream& out, const PaGraph& graph) {
    out << "# netvuln edges v1 n=" << graph.n << '\n';
    for (const auto& [child, parent] : graph.edges)
        out << child << '\t' << parent << '\n';
}

PaGraph read_edges(std::istream& in) {
    std::string header;
    std::getline(in, header);
    const std::string prefix = "# netvuln edges v1 n=";
    if (header.rfind(prefix, 0) != 0)
        throw Error("bad edge-list header: " + header);
    PaGraph g;
    g.n = static_cast<Vertex>(std::stoul(header.substr(prefix.size())));
    g.indegree.assign(g.n + 1, 0);
    Vertex child, parent;
    while (in >> child >> parent) {
        if (!(child > parent && parent >= 1 && child <= g.n))
            throw Error("edge list violates child > parent >= 1");
        g.edges.emplace_back(child, parent);
        g.indegree[parent] += 1;
    }
    return g;
}

void write_mask(std::ostream& out, const VertexMask& mask) {
    out << "# netvuln mask v1\n";
    for (Vertex v = 1; v <= mask.n; ++v)
        out << v << '\t' << (mask.alive[v] ? 1 : 0) << '\n';
}

VertexMask read_mask(std::istream& in) {
    std::string header;
    std::getline(in, header);
    if (header.rfind("# netvuln mask v1", 0) != 0)
        throw Error("bad mask header: " + header);
    std::vector<std::uint8_t> alive(1, 0);
    Vertex label;
    int bit;
    Vertex expect = 1;
    while (in >> label >> bit) {
        if (label != expect++) throw Error("mask labels must be consecutive from 1");
        alive.push_back(bit ? 1 : 0);
    }
    VertexMask m;
    m.n = expect - 1;
    m.alive = std::move(alive);
    return m;
}

}  // namespace netvuln
