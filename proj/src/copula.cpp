#include "bgw/copula.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "bgw/errors.hpp"

namespace bgw {

namespace {

void check_theta(double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("copula: theta must be in (0, 1]");
}

// (-1)^j
double alt(std::size_t j) { return (j % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double copula_cdf(double theta, double s, double t) {
    check_theta(theta);
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
        throw DomainError("copula_cdf: (s, t) must lie in the unit square");
    }
    if (s == 0.0 || t == 0.0) return 0.0;
    if (s == 1.0) return t;
    if (t == 1.0) return s;
    if (theta == 1.0) return s * t;
    const double u = std::pow(s, 1.0 / theta), v = std::pow(t, 1.0 / theta);
    const double g = u + v - u * v;
    return s + t - std::pow(g, theta);
}

std::pair<double, double> copula_partials(double theta, double s, double t) {
    check_theta(theta);
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
        throw DomainError("copula_partials: (s, t) must lie in the unit square");
    }
    if (theta == 1.0) return {t, s};
    const double u = std::pow(s, 1.0 / theta), v = std::pow(t, 1.0 / theta);
    const double g = u + v - u * v;
    if (g == 0.0) return {0.0, 0.0};
    // C_s = 1 - (1 - v) (u / g)^(1 - theta)
    const double cs = 1.0 - (1.0 - v) * std::pow(u / g, 1.0 - theta);
    const double ct = 1.0 - (1.0 - u) * std::pow(v / g, 1.0 - theta);
    return {cs, ct};
}

double spearman_rho(double theta, const SeriesControl& ctrl) {
    check_theta(theta);
    if (theta == 1.0) return 0.0;
    auto term = [&](std::size_t j) {
        const double b = beta(theta, static_cast<double>(j) + 1.0);
        return alt(j) * gen_binom(theta, j) * b * b;
    };
    return 9.0 - 12.0 * theta * theta * series_value(term, ctrl, 0, "spearman_rho");
}

double footrule_phi(double theta, const SeriesControl& ctrl) {
    check_theta(theta);
    if (theta == 1.0) return 0.0;
    auto term = [&](std::size_t j) {
        return alt(j) * gen_binom(theta, j) * beta(theta, 2.0 * static_cast<double>(j) + 1.0);
    };
    return 4.0 - 6.0 * theta * series_value(term, ctrl, 0, "footrule_phi");
}

double blest_B(double theta, const SeriesControl& ctrl) {
    check_theta(theta);
    if (theta == 1.0) return 0.0;
    auto term = [&](std::size_t j) {
        const double n = static_cast<double>(j) + 1.0;
        const double b = beta(theta, n);
        return alt(j) * gen_binom(theta, j) * b * (b - beta(2.0 * theta, n));
    };
    return 8.0 - 24.0 * theta * theta * series_value(term, ctrl, 0, "blest_B");
}

double kendall_tau_formula(double theta) {
    check_theta(theta);
    return 1.0 + 4.0 * theta * beta(2.0, 2.0 * theta + 1.0) * (digamma(2.0) - digamma(2.0 * theta + 1.0));
}

double kendall_tau_numeric(double theta) {
    check_theta(theta);
    if (theta == 1.0) return 0.0;
    boost::math::quadrature::tanh_sinh<double> quad;
    auto inner = [&](double s) {
        return quad.integrate(
            [&](double t) {
                const auto [cs, ct] = copula_partials(theta, s, t);
                return cs * ct;
            },
            0.0, 1.0, 1e-10);
    };
    return 1.0 - 4.0 * quad.integrate(inner, 0.0, 1.0, 1e-9);
}

std::pair<double, double> tail_dependence(double theta) {
    check_theta(theta);
    return {2.0 - std::pow(2.0, theta), 0.0};
}

double regression_dependence_r(double theta, const SeriesControl& ctrl) {
    check_theta(theta);
    if (theta == 1.0) return 0.0;
    // Expansion of {1 - (1-u)(1-v)}^(2 theta - 2) carries C(2 theta - 2, j).
    auto sq = [&](std::size_t j) {
        const double n = static_cast<double>(j) + 1.0;
        return alt(j) * gen_binom(2.0 * theta - 2.0, j) * beta(2.0 - theta, n) * beta(theta, n + 2.0);
    };
    auto cross = [&](std::size_t j) {
        const double n = static_cast<double>(j) + 1.0;
        return alt(j) * gen_binom(theta - 1.0, j) * beta(theta, n + 1.0) / n;
    };
    const double t2 = theta * theta;
    return 4.0 + 6.0 * t2 * series_value(sq, ctrl, 0, "regression_dependence_r") -
           12.0 * t2 * series_value(cross, ctrl, 0, "regression_dependence_r");
}

std::vector<DependenceRow> dependence_sweep(std::size_t steps) {
    if (steps == 0) throw DomainError("dependence_sweep: steps must be positive");
    std::vector<DependenceRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 1; i <= steps; ++i) {
        const double th = static_cast<double>(i) / static_cast<double>(steps);
        rows.push_back({th, spearman_rho(th), kendall_tau_formula(th), kendall_tau_numeric(th),
                        footrule_phi(th), blest_B(th), regression_dependence_r(th)});
    }
    return rows;
}

void write_dependence_csv(std::ostream& out, const std::vector<DependenceRow>& rows) {
    out << "theta,rho,tau_formula,tau_numeric,phi,blest,r\n" << std::setprecision(10);
    for (const auto& r : rows) {
        out << r.theta << ',' << r.rho << ',' << r.tau_formula << ',' << r.tau_numeric << ',' << r.phi << ','
            << r.blest << ',' << r.r << '\n';
    }
}

}  // namespace bgw
