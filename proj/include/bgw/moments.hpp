#pragma once

#include "bgw/params.hpp"
#include "bgw/series.hpp"

namespace bgw {

/// Series control for the moment sums, which decay slowly for small theta.
inline SeriesControl moment_control() { return {1e-12, 1000000, true}; }

/// E(X^r Y^s)
double product_moment(const BgwParams& p, int r, int s, const SeriesControl& ctrl = moment_control());

/// r-th raw moment of EW(a, b, theta).
double ew_moment(const EwParams& e, int r, const SeriesControl& ctrl = moment_control());

/// Pearson correlation of (X, Y).
double correlation(const BgwParams& p, const SeriesControl& ctrl = moment_control());

/// Law of min(X, Y): EW(a, b1 + b2, theta).
EwParams min_law(const BgwParams& p);

double prob_x_less_y(const BgwParams& p);

}  // namespace bgw
