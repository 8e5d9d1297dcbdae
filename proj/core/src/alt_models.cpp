#include "netvuln/alt_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netvuln/errors.hpp"
#include "netvuln/rng.hpp"

namespace netvuln::alt {

double DegreeLaw::tail(std::uint64_t k) const {
    double t = 0.0;
    for (std::uint64_t i = k + 1; i < pmf.size(); ++i) t += pmf[i];
    return t;
}

std::uint64_t DegreeLaw::quantile_tail(double u) const {
    // accumulate the tail from the right for numerical stability
    std::vector<double> tails(pmf.size() + 1, 0.0);
    for (std::size_t i = pmf.size(); i-- > 0;) tails[i] = tails[i + 1] + pmf[i];
    for (std::uint64_t k = 0; k < pmf.size(); ++k)
        if (tails[k + 1] <= u) return k;
    return pmf.size();
}

double DegreeLaw::mean() const {
    double m = 0.0;
    for (std::size_t k = 1; k < pmf.size(); ++k) m += static_cast<double>(k) * pmf[k];
    return m;
}

double DegreeLaw::second_factorial_below(std::uint64_t m) const {
    double s = 0.0;
    const std::uint64_t top = std::min<std::uint64_t>(m, pmf.size() - 1);
    for (std::uint64_t k = 2; k <= top; ++k)
        s += static_cast<double>(k) * static_cast<double>(k - 1) * pmf[k];
    return s;
}

std::uint64_t DegreeLaw::sample(double u) const {
    double acc = 0.0;
    for (std::uint64_t k = 0; k < pmf.size(); ++k) {
        acc += pmf[k];
        if (u < acc) return k;
    }
    return pmf.size() - 1;
}

DegreeLaw DegreeLaw::power(double gamma, std::uint64_t k_max) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw GammaRangeError("power law requires gamma in (0,1)");
    if (k_max < 2) throw Error("power law requires k_max >= 2");
    DegreeLaw law;
    law.pmf.assign(k_max + 1, 0.0);
    const auto tail_fn = [&](std::uint64_t k) {
        return k == 0 ? 1.0 : std::pow(static_cast<double>(k), -1.0 / gamma);
    };
    for (std::uint64_t k = 1; k < k_max; ++k) law.pmf[k] = tail_fn(k - 1) - tail_fn(k);
    law.pmf[k_max] = tail_fn(k_max - 1);  // remaining mass
    return law;
}

DegreeLaw DegreeLaw::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") {
        const auto k_max = j.value("k_max", std::uint64_t{100000});
        return power(j.at("gamma").get<double>(), k_max);
    }
    if (kind == "table") {
        DegreeLaw law;
        for (const auto& [key, value] : j.at("pmf").items()) {
            const auto k = static_cast<std::uint64_t>(std::stoull(key));
            if (k >= law.pmf.size()) law.pmf.resize(k + 1, 0.0);
            law.pmf[k] = value.get<double>();
        }
        const double total =
            std::accumulate(law.pmf.begin(), law.pmf.end(), 0.0);
        if (std::abs(total - 1.0) > 1e-9)
            throw ConfigError("degree-law pmf must sum to 1");
        return law;
    }
    throw ConfigError("degree-law kind must be power|table, got '" + kind + "'");
}

nlohmann::json DegreeLaw::to_json() const {
    nlohmann::json entries = nlohmann::json::object();
    for (std::size_t k = 0; k < pmf.size(); ++k)
        if (pmf[k] != 0.0) entries[std::to_string(k)] = pmf[k];
    return {{"kind", "table"}, {"pmf", entries}};
}

Multigraph cm_generate(std::span<const std::uint32_t> degrees, std::uint64_t seed) {
    if (degrees.empty()) throw EmptyDegreeSequence("cm_generate requires a degree sequence");
    Multigraph g;
    g.n = static_cast<Vertex>(degrees.size());
    g.degree.assign(g.n + 1, 0);

    std::uint64_t total = 0;
    for (Vertex v = 1; v <= g.n; ++v) {
        g.degree[v] = degrees[v - 1];
        total += degrees[v - 1];
    }
    Rng rng(mix64(seed ^ 0x636d2d6d61746368ULL));
    if (total % 2 == 1) {
        const Vertex lucky = static_cast<Vertex>(1 + rng.below(g.n));
        g.degree[lucky] += 1;
        ++total;
        g.padded_half_edge = true;
    }

    std::vector<Vertex> stubs;
    stubs.reserve(total);
    for (Vertex v = 1; v <= g.n; ++v)
        stubs.insert(stubs.end(), g.degree[v], v);
    // Fisher-Yates shuffle, then pair consecutive stubs
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.below(i)]);
    g.edges.reserve(total / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const Vertex a = std::max(stubs[i], stubs[i + 1]);
        const Vertex b = std::min(stubs[i], stubs[i + 1]);
        g.edges.emplace_back(a, b);
    }
    return g;
}

VertexMask cm_attack(const Multigraph& graph, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("cm_attack requires eps in (0,1)");
    const auto cut =
        static_cast<Vertex>(std::floor(eps * static_cast<double>(graph.n)));
    VertexMask mask = VertexMask::all_alive(graph.n);
    mask.kind = MaskKind::Damage;
    mask.eps = eps;
    if (cut == 0) return mask;
    std::vector<Vertex> order(graph.n);
    std::iota(order.begin(), order.end(), 1u);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (graph.degree[a] != graph.degree[b]) return graph.degree[a] > graph.degree[b];
        return a < b;
    });
    for (Vertex i = 0; i < cut; ++i) mask.alive[order[i]] = 0;
    return mask;
}

double cm_pc(const DegreeLaw& law, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("cm_pc requires eps in (0,1)");
    const std::uint64_t m = law.quantile_tail(eps);
    const double md = static_cast<double>(m);
    const double denom = law.second_factorial_below(m) -
                         md * (md - 1.0) * (eps - law.tail(m));
    if (!(denom > 0.0))
        throw SubcriticalError("attacked configuration model has no giant component at any p");
    return law.mean() / denom;
}

double Kernel::operator()(double x, double y) const {
    if (kind == KernelKind::ChungLu) return std::pow(x * y, -gamma);
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    return std::pow(lo, -gamma) * std::pow(hi, gamma - 1.0);
}

IrgGraph irg_generate(const Kernel& kernel, Vertex n, std::uint64_t seed) {
    if (n < 2) throw Error("irg_generate requires n >= 2");
    IrgGraph g;
    g.n = n;
    const double nd = static_cast<double>(n);
    // factor the kernel through per-vertex arrays so the pair loop is cheap
    std::vector<double> lo_pow(n + 1), hi_pow(n + 1);
    for (Vertex i = 1; i <= n; ++i) {
        const double x = static_cast<double>(i) / nd;
        lo_pow[i] = std::pow(x, -kernel.gamma);
        hi_pow[i] = kernel.kind == KernelKind::ChungLu
                        ? lo_pow[i]
                        : std::pow(x, kernel.gamma - 1.0);
    }
    for (Vertex i = 1; i <= n; ++i) {
        for (Vertex j = i + 1; j <= n; ++j) {
            const double p = std::min(lo_pow[i] * hi_pow[j] / nd, 1.0);
            if (keyed_uniform(seed, j, i) < p) g.edges.emplace_back(j, i);
        }
    }
    return g;
}

namespace {

double irg_norm_at(const Kernel& kernel, double eps, std::uint32_t n_cells) {
    const double h = (1.0 - eps) / n_cells;
    std::vector<double> nodes(n_cells);
    for (std::uint32_t i = 0; i < n_cells; ++i)
        nodes[i] = eps + (static_cast<double>(i) + 0.5) * h;

    std::vector<double> matrix(static_cast<std::size_t>(n_cells) * n_cells);
    for (std::uint32_t i = 0; i < n_cells; ++i)
        for (std::uint32_t j = 0; j < n_cells; ++j)
            matrix[static_cast<std::size_t>(i) * n_cells + j] =
                h * kernel(nodes[i], nodes[j]);

    std::vector<double> v(n_cells, 1.0), w(n_cells);
    double lambda = 0.0;
    for (std::uint32_t iter = 1; iter <= 100000; ++iter) {
        for (std::uint32_t i = 0; i < n_cells; ++i) {
            const double* row = matrix.data() + static_cast<std::size_t>(i) * n_cells;
            double acc = 0.0;
            for (std::uint32_t j = 0; j < n_cells; ++j) acc += row[j] * v[j];
            w[i] = acc;
        }
        double norm = 0.0, vnorm = 0.0;
        for (std::uint32_t i = 0; i < n_cells; ++i) {
            norm += w[i] * w[i];
            vnorm += v[i] * v[i];
        }
        norm = std::sqrt(norm);
        const double next = norm / std::sqrt(vnorm);
        for (std::uint32_t i = 0; i < n_cells; ++i) v[i] = w[i] / norm;
        if (iter > 1 && std::abs(next - lambda) <= 1e-13 * next) return next;
        lambda = next;
    }
    throw NoConvergenceError("irg_pc power iteration did not converge");
}

}  // namespace

double irg_pc(const Kernel& kernel, double eps, std::uint32_t n_cells) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("irg_pc requires eps in (0,1)");
    if (n_cells < 16) throw Error("irg_pc requires at least 16 cells");
    const double coarse = irg_norm_at(kernel, eps, n_cells);
    const double fine = irg_norm_at(kernel, eps, 2 * n_cells);
    const double norm = fine + (fine - coarse) / 3.0;  // midpoint rule, order 2
    return 1.0 / norm;
}

double cl_pc_closed(double eps, double gamma) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("cl_pc_closed requires eps in (0,1)");
    if (gamma == 0.5) return 1.0 / std::log(1.0 / eps);
    if (gamma < 0.5)
        return (1.0 - 2.0 * gamma) / (1.0 - std::pow(eps, 1.0 - 2.0 * gamma));
    return (2.0 * gamma - 1.0) * std::pow(eps, 2.0 * gamma - 1.0) /
           (1.0 - std::pow(eps, 2.0 * gamma - 1.0));
}

}  // namespace netvuln::alt
