#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "bgw/series.hpp"

namespace bgw {

/// C(s, t) = s + t - {1 - (1 - s^(1/theta)) (1 - t^(1/theta))}^theta
double copula_cdf(double theta, double s, double t);

/// (dC/ds, dC/dt)
std::pair<double, double> copula_partials(double theta, double s, double t);

inline SeriesControl copula_control() { return {1e-13, 1000000, true}; }

double spearman_rho(double theta, const SeriesControl& ctrl = copula_control());
double footrule_phi(double theta, const SeriesControl& ctrl = copula_control());
double blest_B(double theta, const SeriesControl& ctrl = copula_control());

/// The published closed form 1 + 4 theta B(2, 2 theta + 1)(psi(2) - psi(2 theta + 1)).
/// Known to be wrong: it returns 5/6 at theta = 1. Kept for reference; use
/// kendall_tau_numeric for the actual value.
double kendall_tau_formula(double theta);

/// tau = 1 - 4 int int C_s C_t ds dt by adaptive quadrature.
double kendall_tau_numeric(double theta);

/// (lower, upper) tail dependence coefficients.
std::pair<double, double> tail_dependence(double theta);

/// r = 6 int int (dC/ds)^2 ds dt - 2
double regression_dependence_r(double theta, const SeriesControl& ctrl = copula_control());

struct DependenceRow {
    double theta, rho, tau_formula, tau_numeric, phi, blest, r;
};

std::vector<DependenceRow> dependence_sweep(std::size_t steps = 100);
void write_dependence_csv(std::ostream& out, const std::vector<DependenceRow>& rows);

}  // namespace bgw
