#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "netvuln/alt_models.hpp"
#include "netvuln/components.hpp"
#include "netvuln/errors.hpp"
#include "netvuln/rng.hpp"

using namespace netvuln;
using namespace netvuln::alt;

namespace {

DegreeLaw two_point_law() {
    DegreeLaw law;
    law.pmf = {0.0, 0.5, 0.0, 0.0, 0.5};  // P(D=1)=P(D=4)=1/2
    return law;
}

}  // namespace

TEST_CASE("degree law bookkeeping") {
    const auto law = two_point_law();
    CHECK(law.mean() == doctest::Approx(2.5));
    CHECK(law.tail(0) == doctest::Approx(1.0));
    CHECK(law.tail(1) == doctest::Approx(0.5));
    CHECK(law.tail(3) == doctest::Approx(0.5));
    CHECK(law.tail(4) == doctest::Approx(0.0));
    CHECK(law.quantile_tail(0.25) == 4);
    CHECK(law.quantile_tail(0.5) == 1);
    CHECK(law.second_factorial_below(4) == doctest::Approx(6.0));
}

TEST_CASE("hand-evaluated configuration-model threshold") {
    // m=4, E D=2.5, E[D(D-1)1{D<=4}]=6, correction 12*0.25 -> pc = 2.5/3
    CHECK(cm_pc(two_point_law(), 0.25) == doctest::Approx(2.5 / 3.0).epsilon(1e-12));
}

TEST_CASE("cm_pc approaches the undamaged percolation criterion as eps -> 0") {
    DegreeLaw law;
    law.pmf = {0.0, 0.4, 0.0, 0.6};  // E D = 2.2, E D(D-1) = 3.6 > E D
    CHECK(cm_pc(law, 1e-9) == doctest::Approx(2.2 / 3.6).epsilon(1e-6));
}

TEST_CASE("cm_pc signals the subcritical attacked regime") {
    // removing the degree-4 half leaves only degree-1 vertices
    CHECK_THROWS_AS(cm_pc(two_point_law(), 0.5), SubcriticalError);
}

TEST_CASE("power-law cm_pc scales like eps^{2 gamma - 1}") {
    const double gamma = 0.75;
    const auto law = DegreeLaw::power(gamma, 200000);
    std::vector<double> ratio;
    for (double eps : {1e-2, 1e-3, 1e-4})
        ratio.push_back(cm_pc(law, eps) / std::pow(eps, 2 * gamma - 1));
    for (double r : ratio) {
        CHECK(r > 0.0);
        CHECK(r < 10.0);
    }
    CHECK(ratio.front() / ratio.back() < 3.0);
    CHECK(ratio.back() / ratio.front() < 3.0);
}

TEST_CASE("forced matchings on tiny degree sequences") {
    SUBCASE("degrees [1,1]: the single edge {2,1}") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto g = cm_generate(std::vector<std::uint32_t>{1, 1}, seed);
            REQUIRE(g.edges.size() == 1);
            CHECK(g.edges[0] == Edge{2, 1});
            CHECK_FALSE(g.padded_half_edge);
        }
    }
    SUBCASE("degrees [2]: one self-loop") {
        const auto g = cm_generate(std::vector<std::uint32_t>{2}, 3);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0] == Edge{1, 1});
    }
    SUBCASE("odd degree sum gains one half-edge") {
        const auto g = cm_generate(std::vector<std::uint32_t>{1, 1, 1}, 3);
        CHECK(g.padded_half_edge);
        CHECK(g.edges.size() == 2);
    }
    SUBCASE("empty sequence rejected") {
        CHECK_THROWS_AS(cm_generate(std::vector<std::uint32_t>{}, 1), EmptyDegreeSequence);
    }
}

TEST_CASE("cm matching preserves the degree sequence") {
    const auto law = DegreeLaw::power(0.75, 10000);
    Rng rng(44);
    std::vector<std::uint32_t> degrees(5000);
    for (auto& d : degrees) d = static_cast<std::uint32_t>(law.sample(rng.uniform()));
    const auto g = cm_generate(degrees, 91);
    std::vector<std::uint32_t> seen(g.n + 1, 0);
    for (const auto& [a, b] : g.edges) {
        seen[a] += 1;
        seen[b] += 1;
    }
    for (Vertex v = 1; v <= g.n; ++v) CHECK(seen[v] == g.degree[v]);
}

TEST_CASE("sampled degrees match the law in total variation") {
    const auto law = DegreeLaw::power(0.75, 100000);
    Rng rng(7);
    const int n = 10000;
    std::map<std::uint64_t, double> hist;
    for (int i = 0; i < n; ++i) hist[law.sample(rng.uniform())] += 1.0 / n;
    double tv = 0.0;
    for (std::size_t k = 0; k < law.pmf.size(); ++k) {
        const double e = hist.count(k) ? hist[k] : 0.0;
        tv += std::abs(e - law.pmf[k]);
    }
    CHECK(0.5 * tv < 0.02);
}

TEST_CASE("cm_attack removes exactly the highest-degree vertices") {
    Multigraph g;
    g.n = 4;
    g.degree = {0, 5, 3, 3, 1};
    SUBCASE("eps=0.5 removes labels 1 and 2 (tie broken by label)") {
        const auto mask = cm_attack(g, 0.5);
        CHECK(mask.alive[1] == 0);
        CHECK(mask.alive[2] == 0);
        CHECK(mask.alive[3] == 1);
        CHECK(mask.alive[4] == 1);
    }
    SUBCASE("eps small removes nobody") {
        CHECK(cm_attack(g, 0.2).alive_count() == 4);
    }
    SUBCASE("count is exactly floor(eps n)") {
        for (double eps : {0.3, 0.5, 0.7}) {
            const auto mask = cm_attack(g, eps);
            CHECK(mask.alive_count() ==
                  4 - static_cast<std::uint64_t>(std::floor(eps * 4)));
        }
    }
}

TEST_CASE("kernels: symmetry, positivity, clamping") {
    const Kernel cl{KernelKind::ChungLu, 0.75};
    const Kernel pa{KernelKind::PrefAttach, 0.75};
    for (double x : {0.1, 0.4, 1.0})
        for (double y : {0.05, 0.6, 1.0}) {
            CHECK(cl(x, y) == doctest::Approx(cl(y, x)).epsilon(1e-12));
            CHECK(pa(x, y) == doctest::Approx(pa(y, x)).epsilon(1e-12));
            CHECK(cl(x, y) > 0.0);
            CHECK(pa(x, y) > 0.0);
        }
    // kernels agree at gamma = 1/2
    const Kernel cl_half{KernelKind::ChungLu, 0.5};
    const Kernel pa_half{KernelKind::PrefAttach, 0.5};
    CHECK(cl_half(0.3, 0.8) == doctest::Approx(pa_half(0.3, 0.8)).epsilon(1e-12));
    // clamp: kappa(0.1,0.1)/10 > 1 forces the edge
    const auto g = irg_generate(cl, 10, 5);
    bool found = false;
    for (const auto& e : g.edges) found |= (e == Edge{2, 1});
    CHECK(cl(0.1, 0.2) / 10.0 > 1.0);
    CHECK(found);
}

TEST_CASE("constant kernel reduces to Erdos-Renyi edge counts") {
    // CL kernel with gamma=0: kappa == 1, so G(n, 1/n)
    const Kernel flat{KernelKind::ChungLu, 0.0};
    const Vertex n = 2000;
    const int reps = 40;
    double total = 0.0;
    for (int r = 0; r < reps; ++r)
        total += static_cast<double>(irg_generate(flat, n, 100 + r).edges.size());
    const double mean = total / reps;
    const double expect = (n - 1.0) / 2.0;  // C(n,2)/n
    const double se = std::sqrt(expect / reps);  // binomial, p small
    CHECK(std::abs(mean - expect) < 3 * se);
}

TEST_CASE("irg closed forms from the rank-one kernel") {
    CHECK(cl_pc_closed(0.1, 0.5) == doctest::Approx(1.0 / std::log(10.0)).epsilon(1e-12));
    CHECK(cl_pc_closed(0.01, 0.75) == doctest::Approx(0.5 * 0.1 / 0.9).epsilon(1e-12));
    // gamma < 1/2: robust limit 1 - 2 gamma
    CHECK(cl_pc_closed(1e-12, 0.25) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("numeric irg_pc matches the closed form on a grid") {
    for (double gamma : {0.25, 0.5, 0.75})
        for (double eps : {0.3, 0.1, 0.01}) {
            const double numeric = irg_pc(Kernel{KernelKind::ChungLu, gamma}, eps, 512);
            CHECK(std::abs(numeric - cl_pc_closed(eps, gamma)) < 1e-3);
        }
}

TEST_CASE("irg_pc decreases as eps decreases") {
    for (auto kind : {KernelKind::ChungLu, KernelKind::PrefAttach}) {
        double prev = 1e18;
        for (double eps : {0.3, 0.1, 0.03, 0.01}) {
            const double pc = irg_pc(Kernel{kind, 0.7}, eps, 256);
            CHECK(pc < prev);
            prev = pc;
        }
    }
}

TEST_CASE("pa kernel threshold obeys the two-sided norm estimates") {
    const double gamma = 0.75;
    for (double eps : {1e-2, 1e-3}) {
        const double pc = irg_pc(Kernel{KernelKind::PrefAttach, gamma}, eps, 1024);
        const double scale = std::pow(eps, gamma - 0.5);
        // ||T||^2 <= 2 eps^{1-2g}/(2g-1)^2  ->  pc >= (2g-1)/sqrt(2) * scale
        const double lower = (2 * gamma - 1) / std::sqrt(2.0) * scale;
        // ||T||^2 >= eps^{1-2g}/(2g-1)^2 [1 - e^{2g-1} + 2(2g-1) e^{2g-1} log e]
        const double inner = 1.0 - std::pow(eps, 2 * gamma - 1) +
                             2.0 * (2 * gamma - 1) * std::pow(eps, 2 * gamma - 1) *
                                 std::log(eps);
        const double upper = (2 * gamma - 1) * scale / std::sqrt(inner);
        CHECK(pc >= lower - 1e-9);
        CHECK(pc <= upper + 1e-9);
    }
}

TEST_CASE("attacked multigraph components run directly on the edge list") {
    // multi-edges and self-loops are fine for the union-find
    const auto law = DegreeLaw::power(0.75, 100000);
    Rng rng(3);
    std::vector<std::uint32_t> degrees(20000);
    for (auto& d : degrees) d = static_cast<std::uint32_t>(law.sample(rng.uniform()));
    const auto g = cm_generate(degrees, 17);
    const auto summary = largest_component(g.n, g.edges, cm_attack(g, 0.01));
    CHECK(summary.alive_count == g.n - 200);
    CHECK(summary.largest > 0);
}

TEST_CASE("degree law JSON round trip") {
    const auto parsed = DegreeLaw::from_json(nlohmann::json::parse(
        R"({"kind":"table","pmf":{"1":0.5,"4":0.5}})"));
    CHECK(parsed.mean() == doctest::Approx(2.5));
    const auto back = DegreeLaw::from_json(parsed.to_json());
    CHECK(back.pmf == parsed.pmf);
    const auto power = DegreeLaw::from_json(nlohmann::json::parse(
        R"({"kind":"power","gamma":0.75,"k_max":1000})"));
    CHECK(power.tail(10) == doctest::Approx(std::pow(10.0, -1.0 / 0.75)).epsilon(1e-9));
    CHECK_THROWS_AS(DegreeLaw::from_json(nlohmann::json::parse(R"({"kind":"what"})")),
                    ConfigError);
}
