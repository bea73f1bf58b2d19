#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bgw/params.hpp"
#include "bgw/sample.hpp"

namespace bgw {

/// gamma(delta_i, zeta_i) (shape, rate) on a, b1, b2; beta(delta_4, zeta_4) on theta.
struct PriorConfig {
    std::array<double, 4> delta{1.5, 1.5, 1.5, 1.5};
    std::array<double, 4> zeta{1.5, 1.5, 1.5, 1.5};

    void validate() const;
    /// Prior means, used as a fallback starting point.
    std::array<double, 4> means() const;
};

enum class Coord { A = 0, B1 = 1, B2 = 2, Theta = 3 };

/// log L + log prior, up to a constant. -inf outside the support.
double log_posterior_kernel(const std::array<double, 4>& v, const PriorConfig& prior, const BivariateSample& data);

/// Log of the marginal posterior kernel of one coordinate with the other three
/// held at `v`; only factors involving that coordinate are kept.
double log_full_conditional(Coord which, double value, const std::array<double, 4>& v, const PriorConfig& prior,
                            const BivariateSample& data);

struct McmcOptions {
    std::size_t iterations = 10000;
    std::size_t burn_in = 2000;
    std::array<double, 4> scales{0.1, 0.1, 0.1, 0.1};  // in log / logit coordinates
    bool tune = true;                                   // adapt scales during burn-in
    double target_acceptance = 0.35;
    std::uint64_t seed = 1;
    std::optional<std::array<double, 4>> init;  // default: MLE, else prior means
};

struct Chain {
    std::array<std::vector<double>, 4> traces;  // a, b1, b2, theta
    std::size_t burn_in = 0;
    std::array<double, 4> acceptance_rates{};  // after burn-in
    std::array<double, 4> scales{};            // final proposal scales
    std::uint64_t seed = 0;
    PriorConfig prior;
    std::string warning;  // set when an acceptance rate leaves (0.1, 0.6)

    std::size_t size() const { return traces[0].size(); }
};

Chain run_mcmc(const BivariateSample& data, const PriorConfig& prior, const McmcOptions& opts = {});

/// Bayes estimate under general entropy loss: [E(v^-c)]^(-1/c) over post-burn-in draws.
BgwParams ge_estimate(const Chain& chain, double c);
double ge_estimate(const std::vector<double>& draws, std::size_t burn_in, double c);

/// Writes `iter,a,b1,b2,theta` rows for every recorded iteration.
void write_chain_csv(std::ostream& out, const Chain& chain);

}  // namespace bgw
