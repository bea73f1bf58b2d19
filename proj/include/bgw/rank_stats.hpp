#pragma once

#include <span>
#include <vector>

namespace bgw {

struct Descriptive {
    double min, q1, median, q3, max;
    double mean, sd;   // sd with n - 1 divisor
    double skewness;   // m3 / m2^1.5
    double kurtosis;   // m4 / m2^2 (not excess)
};

Descriptive describe(std::span<const double> v);

/// Type-7 (linear interpolation) sample quantile.
double quantile(std::span<const double> v, double prob);

/// Ranks 1..n, ties get the average rank.
std::vector<double> average_ranks(std::span<const double> v);

double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);
/// Kendall tau-b.
double kendall(std::span<const double> x, std::span<const double> y);
/// 1 - 3 sum |R_i - S_i| / (n^2 - 1)
double footrule(std::span<const double> x, std::span<const double> y);
/// (2n+1)/(n-1) - 12 / (n (n-1) (n+1)^2) sum (n+1-R_i)^2 S_i, R ranks of x.
double blest(std::span<const double> x, std::span<const double> y);

}  // namespace bgw
