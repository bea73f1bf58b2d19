#pragma once

// Shared helpers for the unit tests: independent reference computations.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>

namespace oracle {

// Adaptive 2-D integral over a rectangle by nested Gauss-Kronrod.
inline double integrate2(const std::function<double(double, double)>& f, double x0, double x1, double y0,
                         double y1, double tol = 1e-11) {
    using boost::math::quadrature::gauss_kronrod;
    auto inner = [&](double x) {
        return gauss_kronrod<double, 31>::integrate([&](double y) { return f(x, y); }, y0, y1, 15, tol);
    };
    return gauss_kronrod<double, 31>::integrate(inner, x0, x1, 15, tol);
}

// Same with tanh-sinh, for integrands with endpoint singularities.
inline double integrate2_ts(const std::function<double(double, double)>& f, double x0, double x1, double y0,
                            double y1, double tol = 1e-10) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto inner = [&](double x) { return ts.integrate([&](double y) { return f(x, y); }, y0, y1, tol); };
    return ts.integrate(inner, x0, x1, tol);
}

inline double integrate1(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

inline double integrate1_ts(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, tol);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace oracle
