#pragma once

#include <bit>
#include <cstdint>

#include "monopat/view.hpp"

namespace monopat {

/// Seeded deterministic pseudorandom stream (splitmix64 core). Same seed,
/// same trace, independent of platform and standard library. Supports bounded
/// uniform draws and stream splitting.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw from [0, bound); bound must be positive.
    std::uint64_t uniform_u64(std::uint64_t bound) {
        if (bound <= 1) return 0;
        // masked rejection from the enclosing power of two
        std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero((bound - 1) | 1);
        std::uint64_t r = next_u64() & mask;
        while (r >= bound) r = next_u64() & mask;
        return r;
    }

    /// Uniform index from a non-empty closed interval.
    Index uniform_index(const IndexInterval& iv) {
        return iv.lo + static_cast<Index>(uniform_u64(static_cast<std::uint64_t>(iv.size())));
    }

    /// Derive an independent child stream; advances this stream by one draw.
    Rng split() { return Rng(next_u64() ^ 0xD1B54A32D192ED03ull); }

  private:
    std::uint64_t state_;
};

}  // namespace monopat
