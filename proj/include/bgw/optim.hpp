#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bgw {

struct NelderMeadOptions {
    double ftol = 1e-11;  // spread of simplex values
    double xtol = 1e-9;   // simplex diameter
    std::size_t max_iter = 20000;
    double initial_step = 0.2;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes f. Non-finite values are treated as +inf.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace bgw
