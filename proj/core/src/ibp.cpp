#include "netvuln/ibp.hpp"

#include <cassert>
#include <cmath>

#include "netvuln/errors.hpp"
#include "netvuln/parallel.hpp"

namespace netvuln::ibp {
namespace {

constexpr std::uint64_t kRootTag = 0x726f6f747361ULL;
constexpr std::uint64_t kOffspringTag = 0x6f6666737072ULL;

double clamp_location(double s, double log_eps) {
    // numerical guard; the construction keeps locations inside [log eps, 0]
    return std::min(0.0, std::max(log_eps, s));
}

}  // namespace

ParticleType sample_root(double eps, std::uint64_t seed) {
    if (!(eps > 0.0 && eps < 1.0)) throw EpsOutOfRange("sample_root requires eps in (0,1)");
    Rng rng(mix64(seed ^ kRootTag));
    const double u = eps + (1.0 - eps) * rng.uniform();
    return {std::log(u), Mark::Left};
}

double mean_left_children(double s, double eps, double gamma, double beta) {
    // integral of beta e^{(1-gamma)t} over [log eps - s, 0]
    const double a = std::log(eps) - s;
    return beta / (1.0 - gamma) * (1.0 - std::exp((1.0 - gamma) * a));
}

double mean_right_children(double s, Mark mark, double gamma, double beta) {
    // integral of a_mark e^{gamma t} over [0, -s]
    const double a_mark = mark == Mark::Left ? beta : gamma + beta;
    if (gamma == 0.0) return a_mark * (-s);
    return a_mark / gamma * (std::exp(-gamma * s) - 1.0);
}

std::vector<ParticleType> offspring(const ParticleType& parent, const AttachmentRule& rule,
                                    double eps, Rng& rng) {
    const double log_eps = std::log(eps);
    const double s = parent.location;
    const double gamma = rule.gamma();
    std::vector<ParticleType> children;

    // left children: Poisson count, positions by inverse CDF of the
    // truncated exponential density on [log eps - s, 0]
    const double a = log_eps - s;
    if (a < 0.0) {
        const double rate = 1.0 - gamma;
        const double floor_term = std::exp(rate * a);
        const double lambda = rule(0) / rate * (1.0 - floor_term);
        const std::uint64_t count = rng.poisson(lambda);
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = rng.uniform();
            const double t = std::log(floor_term + v * (1.0 - floor_term)) / rate;
            children.push_back({clamp_location(s + t, log_eps), Mark::Right});
        }
    }

    // right children: jump times of the pure jump process over [0, -s]
    if (s < 0.0) {
        const double horizon = -s;
        std::uint64_t state = parent.mark == Mark::Left ? 0 : 1;
        double t = 0.0;
        for (;;) {
            t += rng.exponential() / rule(state);
            if (t > horizon) break;
            children.push_back({clamp_location(s + t, log_eps), Mark::Left});
            ++state;
        }
    }

    for ([[maybe_unused]] const auto& c : children)
        assert(c.location >= log_eps && c.location <= 0.0);
    return children;
}

std::vector<ParticleType> offspring(const ParticleType& parent, const AttachmentRule& rule,
                                    double eps, std::uint64_t seed) {
    Rng rng(mix64(seed ^ kOffspringTag));
    return offspring(parent, rule, eps, rng);
}

SimResult simulate(const IbpConfig& config) {
    if (!(config.eps > 0.0 && config.eps < 1.0))
        throw EpsOutOfRange("simulate requires eps in (0,1)");
    if (!(config.p >= 0.0 && config.p <= 1.0))
        throw POutOfRange("simulate requires p in [0,1]");

    Rng rng(mix64(config.seed ^ 0x6962702d73696dULL));
    if (rng.uniform() >= config.p) return {Outcome::Extinct, 0, 0};

    std::vector<ParticleType> generation{sample_root(config.eps, rng.next_u64())};
    if (generation.size() >= config.pop_cap)
        return {Outcome::Survived, 0, generation.size()};

    std::vector<ParticleType> next;
    for (std::uint32_t gen = 0; gen < config.gen_cap; ++gen) {
        next.clear();
        for (const auto& particle : generation) {
            for (const auto& child : offspring(particle, config.rule, config.eps, rng)) {
                if (rng.uniform() >= config.p) continue;  // percolation thinning
                next.push_back(child);
                if (next.size() >= config.pop_cap)
                    return {Outcome::Survived, gen + 1, next.size()};
            }
        }
        if (next.empty()) return {Outcome::Extinct, gen + 1, 0};
        generation.swap(next);
    }
    return {Outcome::Censored, config.gen_cap, generation.size()};
}

SurvivalEstimate survival_probability(double eps, const AttachmentRule& rule, double p,
                                      std::uint32_t replicas, std::uint32_t gen_cap,
                                      std::uint32_t pop_cap, std::uint64_t seed) {
    if (replicas < 1) throw Error("survival_probability requires replicas >= 1");
    std::vector<std::uint8_t> outcomes(replicas);
    parallel_for(replicas, [&](std::size_t r) {
        IbpConfig cfg{eps, rule, p, gen_cap, pop_cap, derive_seed(seed, 7, r)};
        outcomes[r] = static_cast<std::uint8_t>(simulate(cfg).outcome);
    });

    std::uint64_t survived = 0, censored = 0;
    for (auto o : outcomes) {
        survived += o == static_cast<std::uint8_t>(Outcome::Survived);
        censored += o == static_cast<std::uint8_t>(Outcome::Censored);
    }
    SurvivalEstimate est;
    est.replicas = replicas;
    est.zeta_lower = static_cast<double>(survived) / replicas;
    est.zeta_upper = static_cast<double>(survived + censored) / replicas;
    est.censored_fraction = static_cast<double>(censored) / replicas;
    const double mid = est.mid();
    est.se = std::sqrt(std::max(mid * (1.0 - mid), 1e-12) / replicas);
    return est;
}

}  // namespace netvuln::ibp
