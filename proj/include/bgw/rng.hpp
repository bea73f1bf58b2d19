#pragma once

#include <cstdint>
#include <random>

namespace bgw {

/// Seedable 64-bit stream (mt19937_64). Identical seeds give identical
/// streams on every platform: uniforms are built from raw 64-bit outputs
/// rather than through std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream number `index` derived from `master`.
    static Rng substream(std::uint64_t master, std::uint64_t index);

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal via Box-Muller (no cached second value).
    double normal();

    std::uint64_t next_u64() { return eng_(); }
    std::uint64_t seed() const { return seed_; }

private:
    Rng(std::uint64_t seed, std::seed_seq& seq);

    std::mt19937_64 eng_;
    std::uint64_t seed_;
};

}  // namespace bgw
