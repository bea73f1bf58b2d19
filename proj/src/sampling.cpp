#include "bgw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bgw/errors.hpp"
#include "bgw/series.hpp"

namespace bgw {

Rng::Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

Rng::Rng(std::uint64_t seed, std::seed_seq& seq) : eng_(seq), seed_(seed) {}

Rng Rng::substream(std::uint64_t master, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x5eedu};
    return Rng(master, seq);
}

double Rng::uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

constexpr int kTrials = 32;
constexpr double kExactSearchLimit = 1e4;
constexpr std::uint64_t kPlainMinLimit = 64;

// log P(K > k) = log prod_{i<=k} (1 - theta/i)
double log_tail(double theta, double k) {
    return log_gamma(k + 1.0 - theta) - log_gamma(1.0 - theta) - log_gamma(k + 1.0);
}

// K given K > kTrials, by inverse transform of the tail. Returned as double
// because for small theta it can exceed any integer type.
double sample_k_tail(double theta, Rng& rng) {
    const double target = std::log(rng.uniform()) + log_tail(theta, kTrials);
    // Gamma(k+1-theta)/Gamma(k+1) ~ (k + (1-theta)/2)^(-theta)
    const double c = 0.5 * (1.0 - theta);
    const double approx = std::exp(-(target + log_gamma(1.0 - theta)) / theta) - c;
    if (!(approx <= kExactSearchLimit)) return std::max(std::ceil(approx), kTrials + 1.0);
    // smallest k with log_tail(k) <= target
    double lo = kTrials, hi = 2.0 * kExactSearchLimit;
    while (hi - lo > 1.0) {
        const double mid = std::floor(0.5 * (lo + hi));
        if (log_tail(theta, mid) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double sample_k_real(double theta, Rng& rng, SamplerStats* stats) {
    if (theta == 1.0) return 1.0;
    for (int i = 1; i <= kTrials; ++i) {
        if (rng.uniform() < theta / i) return i;
    }
    if (stats) ++stats->k_beyond_trials;
    return sample_k_tail(theta, rng);
}

double weibull(double a, double b, Rng& rng) { return std::pow(-std::log(rng.uniform()) / b, 1.0 / a); }

double min_of_k(double a, double b, double k, Rng& rng, SamplerStats* stats) {
    double m;
    if (k <= static_cast<double>(kPlainMinLimit)) {
        const auto kk = static_cast<int>(k);
        m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kk; ++i) m = std::min(m, weibull(a, b, rng));
    } else {
        // min of K iid W(a, b) is W(a, K b)
        if (stats) ++stats->min_shortcut;
        m = std::exp((std::log(-std::log(rng.uniform())) - std::log(k) - std::log(b)) / a);
    }
    if (!(m >= std::numeric_limits<double>::min())) {
        if (stats) ++stats->clamped;
        m = std::numeric_limits<double>::min();
    }
    return m;
}

}  // namespace

std::uint64_t sample_k(double theta, Rng& rng) {
    if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("sample_k: theta must be in (0, 1]");
    const double k = sample_k_real(theta, rng, nullptr);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (k >= 0x1.0p64) return kMax;
    return static_cast<std::uint64_t>(k);
}

std::pair<double, double> sample_pair(const BgwParams& p, Rng& rng, SamplerStats* stats) {
    const double k = sample_k_real(p.theta(), rng, stats);
    const double x = min_of_k(p.a(), p.b1(), k, rng, stats);
    const double y = min_of_k(p.a(), p.b2(), k, rng, stats);
    if (stats) ++stats->pairs;
    return {x, y};
}

BivariateSample sample_n(const BgwParams& p, std::size_t n, Rng& rng, SamplerStats* stats) {
    if (n < 1) throw DomainError("sample_n: n must be >= 1");
    BivariateSample out;
    out.x.reserve(n);
    out.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, y] = sample_pair(p, rng, stats);
        out.push_back(x, y);
    }
    return out;
}

}  // namespace bgw
