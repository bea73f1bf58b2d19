#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "bgw/params.hpp"
#include "bgw/series.hpp"

namespace bgw {

enum class Margin { X, Y };

double cdf(const BgwParams& p, double x, double y);
double survival(const BgwParams& p, double x, double y);
double pdf(const BgwParams& p, double x, double y);
/// log f(x, y); -inf where the density underflows.
double log_pdf(const BgwParams& p, double x, double y);

EwParams marginal(const BgwParams& p, Margin which);
double marginal_cdf(const EwParams& e, double t);
double marginal_pdf(const EwParams& e, double t);
double marginal_survival(const EwParams& e, double t);

/// Conditional law of Y given X = given_x.
double cond_pdf(const BgwParams& p, double y, double given_x);
double cond_cdf(const BgwParams& p, double y, double given_x);
double cond_survival(const BgwParams& p, double y, double given_x);

/// E(Y | X = x)
double regression(const BgwParams& p, double x, const SeriesControl& ctrl = {});

/// h(x, y) = f(x, y) / S(x, y)
double hazard(const BgwParams& p, double x, double y);
/// (-d ln S/dx, -d ln S/dy)
std::pair<double, double> hazard_gradient(const BgwParams& p, double x, double y);

/// d^2 ln f / dx dy
double local_dependence(const BgwParams& p, double x, double y);

struct GridSpec {
    double x_max = 5.0;
    double y_max = 5.0;
    std::size_t nx = 50;
    std::size_t ny = 50;
};

/// Writes `x,y,F,f` rows over (0, x_max] x (0, y_max].
void write_density_grid(std::ostream& out, const BgwParams& p, const GridSpec& grid);

}  // namespace bgw
