#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace bgw {

/// Truncation control for the infinite sums sum_j C(theta, j) (-1)^(j+1) g(j).
struct SeriesControl {
    double tol = 1e-12;            // absolute term tolerance
    std::size_t max_terms = 100000;
    // Add a power-law estimate of the remainder when the tail terms share a
    // sign. Turns a max_terms stop into an accepted result when the fitted
    // decay exponent exceeds 1.
    bool tail_correction = true;

    void validate() const;
};

enum class StopReason {
    Tolerance,         // two consecutive |term| < tol
    TailExtrapolated,  // max_terms reached, remainder estimated
    MaxTerms           // max_terms reached, no usable remainder estimate
};

struct SeriesResult {
    double value = 0.0;
    std::size_t terms = 0;  // number of terms summed
    StopReason reason = StopReason::MaxTerms;
    double last_term = 0.0;
    double tail = 0.0;  // remainder estimate already included in value

    bool converged() const { return reason != StopReason::MaxTerms; }
};

/// Sums term(first), term(first+1), ... The callback is invoked with strictly
/// increasing indices, once each.
SeriesResult sum_series(const std::function<double(std::size_t)>& term,
                        const SeriesControl& ctrl, std::size_t first = 1);

/// sum_series that throws NumericalError on non-convergence.
double series_value(const std::function<double(std::size_t)>& term,
                    const SeriesControl& ctrl, std::size_t first = 1,
                    const char* what = "series");

/// Generalized binomial coefficient C(alpha, j) = alpha (alpha-1) ... (alpha-j+1) / j!
/// for any real alpha. Large j goes through log-gamma with explicit sign.
double gen_binom(double alpha, std::size_t j);

// Special functions. All throw DomainError for non-positive arguments.
double log_gamma(double x);
double digamma(double x);
double beta(double a, double b);
double log_beta(double a, double b);

enum class SpecialFunction { LogGamma, Digamma, Beta };

/// Name-dispatched evaluation; `args` holds one value (LogGamma, Digamma) or
/// two (Beta).
double special(SpecialFunction fn, std::span<const double> args);

}  // namespace bgw
