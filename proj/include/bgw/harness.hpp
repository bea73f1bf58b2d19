#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bgw/bayes.hpp"
#include "bgw/params.hpp"
#include "bgw/sample.hpp"

namespace bgw {

enum class EstimatorKind { Mle, Bayes };

struct BayesEstimatorConfig {
    PriorConfig prior{};
    double c = 0.5;
    std::size_t iterations = 10000;
    std::size_t burn_in = 2000;
};

struct ExperimentConfig {
    BgwParams true_params{2.0, 1.5, 1.5, 0.5};
    std::vector<std::size_t> sample_sizes{10, 20, 30, 40};
    std::size_t replications = 200;
    EstimatorKind estimator = EstimatorKind::Mle;
    BayesEstimatorConfig bayes{};
    std::uint64_t master_seed = 2024;
    int starts = 5;
    unsigned threads = 0;  // 0: BGW_THREADS, else hardware concurrency

    void validate() const;
};

/// Reads `key=value` lines or a JSON object. Keys: params, sizes, reps,
/// estimator (mle|bayes), prior, c, iters, burnin, seed, starts, threads.
ExperimentConfig parse_experiment_config(const std::string& text);

struct BiasMseRow {
    std::size_t n = 0;
    std::array<double, 4> bias{};
    std::array<double, 4> mse{};
    std::size_t used = 0;    // replications that entered the averages
    std::size_t failed = 0;  // excluded: fit threw or did not converge
};

/// Worker count: BGW_THREADS if set to a positive integer, else hardware concurrency.
unsigned default_workers();

/// Results do not depend on the number of workers: every replication draws
/// from its own substream of master_seed and the reduction runs in order.
std::vector<BiasMseRow> run_experiment(const ExperimentConfig& cfg);

void write_bias_mse_csv(std::ostream& out, const std::vector<BiasMseRow>& rows);

struct PipelineOptions {
    double scale = 10.0;  // fits use data / scale
    int starts = 5;
    std::uint64_t seed = 1;
    // marginal laws at which the KS distances are reported in addition to the fitted ones
    std::optional<EwParams> ks_reference_x = EwParams(1.0606, 0.9958, 0.9999);
    std::optional<EwParams> ks_reference_y = EwParams(1.2429, 0.8123, 0.9983);
};

/// Descriptive statistics, sample dependence coefficients, marginal EW fits
/// with KS tests, BGW / BGE / BGR fits and the two likelihood-ratio tests.
nlohmann::json real_data_pipeline(const BivariateSample& raw, const PipelineOptions& opts = {});

}  // namespace bgw
