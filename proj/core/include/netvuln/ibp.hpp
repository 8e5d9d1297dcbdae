#pragma once

#include <cstdint>
#include <vector>

#include "netvuln/rng.hpp"
#include "netvuln/rules.hpp"

namespace netvuln::ibp {

// Mark records on which side of a particle its parent sits; it selects the
// law of the offspring to the right (rates beta for Left, gamma+beta for
// Right in the affine case).
enum class Mark : std::uint8_t { Left, Right };

struct ParticleType {
    double location = 0.0;  // in [log eps, 0]
    Mark mark = Mark::Left;
};

struct IbpConfig {
    double eps;
    AttachmentRule rule;
    double p = 1.0;            // retention probability
    std::uint32_t gen_cap = 200;
    std::uint32_t pop_cap = 1000;
    std::uint64_t seed = 0;
};

// Root type: location log U with e^{location} uniform on [eps, 1], mark Left.
ParticleType sample_root(double eps, std::uint64_t seed);

// One generation of children. Left children arrive as a Poisson point
// process with intensity beta e^{(1-gamma)t} dt restricted to the window
// [log eps - s, 0] and carry mark Right; right children sit at the jump
// times of the pure jump process on [0, -s] (started at 0 or 1 according to
// the parent's mark) and carry mark Left.
std::vector<ParticleType> offspring(const ParticleType& parent, const AttachmentRule& rule,
                                    double eps, Rng& rng);
std::vector<ParticleType> offspring(const ParticleType& parent, const AttachmentRule& rule,
                                    double eps, std::uint64_t seed);

// Mean number of left/right children of a particle at location s, used as an
// independent check against the discretized mean-offspring operator.
double mean_left_children(double s, double eps, double gamma, double beta);
double mean_right_children(double s, Mark mark, double gamma, double beta);

enum class Outcome : std::uint8_t { Extinct, Survived, Censored };

struct SimResult {
    Outcome outcome = Outcome::Extinct;
    std::uint32_t generation = 0;
    std::uint64_t population = 0;
};

// Breadth-first percolated simulation. Survived once the population reaches
// pop_cap; Censored when gen_cap generations pass with the population
// strictly between 0 and pop_cap.
SimResult simulate(const IbpConfig& config);

struct SurvivalEstimate {
    double zeta_lower = 0.0;      // censored counted as extinct
    double zeta_upper = 0.0;      // censored counted as survived
    double se = 0.0;
    double censored_fraction = 0.0;
    std::uint32_t replicas = 0;

    double mid() const { return 0.5 * (zeta_lower + zeta_upper); }
};

SurvivalEstimate survival_probability(double eps, const AttachmentRule& rule, double p,
                                      std::uint32_t replicas, std::uint32_t gen_cap,
                                      std::uint32_t pop_cap, std::uint64_t seed);

}  // namespace netvuln::ibp
