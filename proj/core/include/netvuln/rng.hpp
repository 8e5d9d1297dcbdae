#pragma once

#include <cmath>
#include <cstdint>

namespace netvuln {

// splitmix64 finalizer (Steele/Lea/Flood). All derived randomness in the
// library funnels through this mix so that streams are reproducible and
// independent of evaluation order.
inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Sub-seed for sweep cell `cell` / replica `rep` of a master seed.
// Documented in the README; ports should reproduce records, not bit streams.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                                           std::uint64_t rep = 0) noexcept {
    return mix64(mix64(master ^ 0x6c62272e07bb0142ULL) ^ mix64(cell) ^ (rep * 0x100000001b3ULL));
}

// Counter-based value for a keyed pair, used for per-edge and per-vertex
// uniforms: independent of the order in which edges are examined.
inline constexpr std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t a,
                                         std::uint64_t b = 0) noexcept {
    return mix64(seed + 0x9e3779b97f4a7c15ULL * a + 0xc2b2ae3d27d4eb4fULL * b);
}

inline constexpr double u64_to_unit(std::uint64_t v) noexcept {
    return static_cast<double>(v >> 11) * 0x1.0p-53;  // [0,1)
}

inline constexpr double keyed_uniform(std::uint64_t seed, std::uint64_t a,
                                      std::uint64_t b = 0) noexcept {
    return u64_to_unit(keyed_u64(seed, a, b));
}

// Sequential splitmix64 stream for simulation paths.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x853c49e6748fea9bULL)) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // uniform in [0,1)
    double uniform() noexcept { return u64_to_unit(next_u64()); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) noexcept {
        // multiply-shift; bias is negligible for n << 2^64
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // standard exponential
    double exponential() noexcept { return -std::log1p(-uniform()); }

    double exponential(double rate) noexcept { return exponential() / rate; }

    // Poisson by multiplication; intended for small means
    std::uint64_t poisson(double mean) noexcept {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = 1.0;
        for (;;) {
            prod *= 1.0 - uniform();
            if (prod <= limit) return k;
            ++k;
        }
    }

    // Exact Binomial(n, p) by inversion with a cheap zero-success shortcut.
    std::uint64_t binomial(std::uint64_t n, double p) noexcept {
        if (n == 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        const double u = uniform();
        const double np = static_cast<double>(n) * p;
        if (u <= 1.0 - np) return 0;  // u <= (1-p)^n is implied
        double prob = std::exp(static_cast<double>(n) * std::log1p(-p));
        double cdf = prob;
        const double odds = p / (1.0 - p);
        std::uint64_t x = 0;
        while (u > cdf && x < n) {
            prob *= odds * static_cast<double>(n - x) / static_cast<double>(x + 1);
            ++x;
            cdf += prob;
            if (prob < 1e-300 && u > cdf) return x;  // exhausted double precision
        }
        return x;
    }

  private:
    std::uint64_t state_;
};

}  // namespace netvuln
