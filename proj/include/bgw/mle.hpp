#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bgw/optim.hpp"
#include "bgw/params.hpp"
#include "bgw/sample.hpp"

namespace bgw {

/// Sum of log f(x_i, y_i); -inf when a density term underflows.
double log_likelihood(const BgwParams& p, const BivariateSample& data);

/// Analytic gradient (d/da, d/db1, d/db2, d/dtheta) of log_likelihood.
std::array<double, 4> score(const BgwParams& p, const BivariateSample& data);

struct FitOptions {
    std::optional<double> fix_a;  // 1 for BGE, 2 for BGR
    int starts = 5;
    std::uint64_t seed = 1;
    NelderMeadOptions nm{};
};

struct FitResult {
    BgwParams params{1.0, 1.0, 1.0, 1.0};
    double log_lik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    std::size_t n_iter = 0;
    bool converged = false;
    double gradient_norm = 0.0;  // in the optimizer's coordinates, free parameters only
    bool theta_at_boundary = false;
    int n_free = 4;
    std::size_t n_obs = 0;
};

/// Maximum likelihood over a > 0, b1 > 0, b2 > 0, theta in (0, 1].
/// With `init` empty the first start comes from a Weibull moment heuristic.
FitResult fit_mle(const BivariateSample& data, const std::optional<BgwParams>& init = std::nullopt,
                  const FitOptions& opts = {});

/// Approximate standard errors from a finite-difference Hessian of the
/// log-likelihood. Entries for fixed parameters are 0.
std::array<double, 4> standard_errors(const FitResult& fit, const BivariateSample& data);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// -2 (LL_restricted - LL_full) against chi-square(df).
TestResult lr_test(const FitResult& full, const FitResult& restricted, int df);

/// P(sqrt(n) D > lambda) from the asymptotic Kolmogorov distribution.
double kolmogorov_q(double lambda);

/// One-sample KS test of data against EW(a, b, theta).
TestResult ks_test_ew(std::span<const double> data, const EwParams& e);

struct EwFit {
    EwParams params{1.0, 1.0, 1.0};
    double log_lik = 0.0;
    bool converged = false;
};

double ew_log_likelihood(const EwParams& e, std::span<const double> data);

/// Univariate EW maximum likelihood, theta restricted to (0, 1].
EwFit fit_ew(std::span<const double> data, const FitOptions& opts = {});

}  // namespace bgw
