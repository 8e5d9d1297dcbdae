#pragma once

#include <cstdint>
#include <vector>

#include "netvuln/pa_graph.hpp"
#include "netvuln/rules.hpp"

namespace netvuln {

// Tail representation of a degree law: tail[k] = mu({k, k+1, ...}).
struct DegreeDistribution {
    std::vector<double> tail;
    double eps = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    bool damaged = false;

    double pmf(std::uint32_t k) const {
        const double hi = k < tail.size() ? tail[k] : 0.0;
        const double lo = k + 1 < tail.size() ? tail[k + 1] : 0.0;
        return hi - lo;
    }
};

// theta(k,a,c) = sum_{i<=k} C(k,i) (-a)^i/(i+c), evaluated through its
// integral form a^{-c} int_0^a x^{c-1} (1-x)^k dx, which stays stable for
// large k where the alternating sum cancels catastrophically.
double incomplete_beta_sum(double a, double c, std::uint32_t k);

// P(Z_t >= k+1) for the pure jump process with affine rates gamma*k + beta.
double jump_tail(double t, std::uint32_t k, double gamma, double beta);

// Asymptotic indegree law of the damaged network (exponential tails).
DegreeDistribution mu_damaged(double eps, double gamma, double beta, std::uint32_t k_max);

// Asymptotic indegree law of the undamaged network (power-law tails).
DegreeDistribution mu_undamaged(double gamma, double beta, std::uint32_t k_max);

// Limit of (maximal indegree)/log n in the damaged network.
double max_indegree_constant(double eps, double gamma);

// Normalized indegree histogram over the alive vertices.
std::vector<double> empirical_indegree(const PaGraph& graph, const VertexMask& mask);

struct JumpProcessSpec {
    AttachmentRule rule;
    int start = 0;  // 0 for Z, 1 for the size-biased version started at 1
};

// Jump times in [0, horizon]; waiting time in state k is Exp(f(k)).
// A shared seed couples the start=0 and start=1 processes through the same
// unit exponentials, so the latter dominates pathwise.
std::vector<double> simulate_jump_process(const JumpProcessSpec& spec, double horizon,
                                          std::uint64_t seed);

// Total-variation distance between a histogram and a theoretical law.
double total_variation(const std::vector<double>& pmf, const DegreeDistribution& mu);

}  // namespace netvuln
