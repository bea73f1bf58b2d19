#pragma once

#include <cstdint>
#include <utility>

#include "bgw/params.hpp"
#include "bgw/rng.hpp"
#include "bgw/sample.hpp"

namespace bgw {

/// Counters for the large-K paths of the sampler.
struct SamplerStats {
    std::uint64_t pairs = 0;
    std::uint64_t k_beyond_trials = 0;  // K drawn by inverse transform past the sequential trials
    std::uint64_t min_shortcut = 0;     // coordinates drawn from the min-of-K law directly
    std::uint64_t clamped = 0;          // coordinates that underflowed and were clamped to DBL_MIN
};

/// Trial number of the first success when trial i succeeds with probability theta / i.
/// Saturates at UINT64_MAX.
std::uint64_t sample_k(double theta, Rng& rng);

std::pair<double, double> sample_pair(const BgwParams& p, Rng& rng, SamplerStats* stats = nullptr);

BivariateSample sample_n(const BgwParams& p, std::size_t n, Rng& rng, SamplerStats* stats = nullptr);

}  // namespace bgw
