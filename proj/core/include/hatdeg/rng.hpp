#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace hatdeg {

/// Seeded 64-bit Mersenne Twister. The engine's output sequence is fixed by
/// the C++ standard; the std distributions are not, so the mappings to
/// bounded integers and coin flips live here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    auto next() -> std::uint64_t { return engine_(); }

    /// Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    auto below(std::uint64_t bound) -> std::uint64_t
    {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do
            x = next();
        while (x >= limit);
        return x % bound;
    }

    /// P(true) = threshold / 2^64; see bernoulli_threshold.
    auto coin(std::uint64_t threshold, bool always) -> bool { return always || next() < threshold; }

    static auto bernoulli_threshold(double p) -> std::uint64_t
    {
        if (p <= 0.0)
            return 0;
        if (p >= 1.0)
            return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(std::ldexp(p, 64));
    }

  private:
    std::mt19937_64 engine_;
};

}
