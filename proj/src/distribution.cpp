#include "bgw/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bgw/errors.hpp"

namespace bgw {

BgwParams::BgwParams(double a, double b1, double b2, double theta)
    : a_(a), b1_(b1), b2_(b2), theta_(theta) {
    if (!admissible(a, b1, b2, theta)) {
        throw DomainError("BgwParams: need a, b1, b2 > 0 and 0 < theta <= 1, got " + to_string());
    }
}

bool BgwParams::admissible(double a, double b1, double b2, double theta) {
    return a > 0.0 && b1 > 0.0 && b2 > 0.0 && theta > 0.0 && theta <= 1.0 && std::isfinite(a) &&
           std::isfinite(b1) && std::isfinite(b2);
}

double BgwParams::z(double x, double y) const { return b1_ * std::pow(x, a_) + b2_ * std::pow(y, a_); }

std::string BgwParams::to_string() const {
    std::ostringstream os;
    os << std::setprecision(10) << "(a=" << a_ << ", b1=" << b1_ << ", b2=" << b2_ << ", theta=" << theta_
       << ")";
    return os.str();
}

EwParams::EwParams(double a, double b, double theta) : a_(a), b_(b), theta_(theta) {
    if (!(a > 0.0 && b > 0.0 && theta > 0.0 && theta <= 1.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("EwParams: need a, b > 0 and 0 < theta <= 1");
    }
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 - e^{-z}) for z >= 0, accurate at both ends
double log1m_exp_neg(double z) {
    if (z <= 0.0) return kNegInf;
    return z < std::numbers::ln2 ? std::log(-std::expm1(-z)) : std::log1p(-std::exp(-z));
}

void require_nonneg(double x, double y, const char* what) {
    if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError(std::string(what) + ": arguments must be >= 0");
}

void require_pos(double x, double y, const char* what) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError(std::string(what) + ": arguments must be > 0");
}

}  // namespace

double cdf(const BgwParams& p, double x, double y) {
    require_nonneg(x, y, "cdf");
    if (x == 0.0 || y == 0.0) return 0.0;
    const double zx = p.b1() * std::pow(x, p.a());
    const double zy = p.b2() * std::pow(y, p.a());
    if (p.theta() == 1.0) return std::expm1(-zx) * std::expm1(-zy);
    const double th = p.theta();
    const double v = std::exp(th * log1m_exp_neg(zx)) + std::exp(th * log1m_exp_neg(zy)) -
                     std::exp(th * log1m_exp_neg(zx + zy));
    return std::clamp(v, 0.0, 1.0);
}

double survival(const BgwParams& p, double x, double y) {
    require_nonneg(x, y, "survival");
    const double z = p.z(x, y);
    if (p.theta() == 1.0) return std::exp(-z);
    return -std::expm1(p.theta() * log1m_exp_neg(z));
}

namespace {

// log(1 - e^-z) given log z, so that z underflowing to zero does not lose the value.
double log1m_exp_neg_log(double lz) {
    if (lz < -30.0) return lz - 0.5 * std::exp(lz);
    return log1m_exp_neg(std::exp(lz));
}

}  // namespace

double log_pdf(const BgwParams& p, double x, double y) {
    require_pos(x, y, "pdf");
    const double a = p.a(), th = p.theta();
    const double lx = std::log(x), ly = std::log(y);
    const double zx = p.b1() * std::pow(x, a);
    const double zy = p.b2() * std::pow(y, a);
    if (th == 1.0) {
        return 2.0 * std::log(a) + std::log(p.b1()) + std::log(p.b2()) + (a - 1.0) * (lx + ly) - zx - zy;
    }
    const double z = zx + zy;
    const double lzx = std::log(p.b1()) + a * lx, lzy = std::log(p.b2()) + a * ly;
    const double lz = std::max(lzx, lzy) + std::log1p(std::exp(-std::abs(lzx - lzy)));
    const double lw = log1m_exp_neg_log(lz);
    return std::log(th) + 2.0 * std::log(a) + std::log(p.b1()) + std::log(p.b2()) + (a - 1.0) * (lx + ly) - z +
           (th - 2.0) * lw + std::log1p(-th * std::exp(-z));
}

double pdf(const BgwParams& p, double x, double y) {
    return std::min(std::exp(log_pdf(p, x, y)), std::numeric_limits<double>::max());
}

EwParams marginal(const BgwParams& p, Margin which) {
    return {p.a(), which == Margin::X ? p.b1() : p.b2(), p.theta()};
}

double marginal_cdf(const EwParams& e, double t) {
    if (!(t >= 0.0)) throw DomainError("marginal_cdf: t must be >= 0");
    if (t == 0.0) return 0.0;
    return std::exp(e.theta() * log1m_exp_neg(e.b() * std::pow(t, e.a())));
}

double marginal_survival(const EwParams& e, double t) {
    if (!(t >= 0.0)) throw DomainError("marginal_survival: t must be >= 0");
    if (t == 0.0) return 1.0;
    return -std::expm1(e.theta() * log1m_exp_neg(e.b() * std::pow(t, e.a())));
}

double marginal_pdf(const EwParams& e, double t) {
    if (!(t >= 0.0)) throw DomainError("marginal_pdf: t must be >= 0");
    const double a = e.a(), b = e.b(), th = e.theta();
    if (t == 0.0) {
        // f(t) ~ theta a b^theta t^(a theta - 1) near 0
        const double k = a * th;
        if (k < 1.0) return std::numeric_limits<double>::infinity();
        return k == 1.0 ? k * std::pow(b, th) : 0.0;
    }
    const double z = b * std::pow(t, a);
    const double lt = std::log(t);
    const double lw = log1m_exp_neg_log(std::log(b) + a * lt);
    return std::min(std::exp(std::log(th * a * b) + (a - 1.0) * lt - z + (th - 1.0) * lw),
                    std::numeric_limits<double>::max());
}

double cond_pdf(const BgwParams& p, double y, double given_x) {
    require_pos(y, given_x, "cond_pdf");
    const double a = p.a(), th = p.theta();
    const double zx = p.b1() * std::pow(given_x, a);
    const double zy = p.b2() * std::pow(y, a);
    double l = std::log(a * p.b2()) + (a - 1.0) * std::log(y) - zy;
    if (th != 1.0) {
        const double z = zx + zy;
        l += (th - 2.0) * log1m_exp_neg(z) + std::log1p(-th * std::exp(-z)) - (th - 1.0) * log1m_exp_neg(zx);
    }
    return std::exp(l);
}

double cond_survival(const BgwParams& p, double y, double given_x) {
    require_pos(y, given_x, "cond_survival");
    const double a = p.a(), th = p.theta();
    const double zx = p.b1() * std::pow(given_x, a);
    const double zy = p.b2() * std::pow(y, a);
    if (th == 1.0) return std::exp(-zy);
    return std::exp(-zy + (th - 1.0) * (log1m_exp_neg(zx + zy) - log1m_exp_neg(zx)));
}

double cond_cdf(const BgwParams& p, double y, double given_x) {
    require_pos(y, given_x, "cond_cdf");
    const double a = p.a(), th = p.theta();
    const double zx = p.b1() * std::pow(given_x, a);
    const double zy = p.b2() * std::pow(y, a);
    if (th == 1.0) return -std::expm1(-zy);
    return -std::expm1(-zy + (th - 1.0) * (log1m_exp_neg(zx + zy) - log1m_exp_neg(zx)));
}

double regression(const BgwParams& p, double x, const SeriesControl& ctrl) {
    if (!(x > 0.0)) throw DomainError("regression: x must be > 0");
    const double a = p.a(), th = p.theta();
    const double lead = std::exp(log_gamma(1.0 + 1.0 / a)) / std::pow(p.b2(), 1.0 / a);
    if (th == 1.0) return lead;
    const double q = p.b1() * std::pow(x, a);
    // e^{-q} from f_X is factored out of every term
    auto term = [&](std::size_t j) {
        const double jd = static_cast<double>(j);
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        return sign * gen_binom(th, j) * std::pow(jd, 1.0 - 1.0 / a) * std::exp(-(jd - 1.0) * q);
    };
    const double s = series_value(term, ctrl, 1, "regression");
    return lead * s / (th * std::exp((th - 1.0) * log1m_exp_neg(q)));
}

double hazard(const BgwParams& p, double x, double y) {
    require_pos(x, y, "hazard");
    const double z = p.z(x, y);
    const double log_s = p.theta() == 1.0 ? -z : std::log(-std::expm1(p.theta() * log1m_exp_neg(z)));
    return std::exp(log_pdf(p, x, y) - log_s);
}

std::pair<double, double> hazard_gradient(const BgwParams& p, double x, double y) {
    require_pos(x, y, "hazard_gradient");
    const double a = p.a(), th = p.theta();
    const double base_x = a * p.b1() * std::pow(x, a - 1.0);
    const double base_y = a * p.b2() * std::pow(y, a - 1.0);
    if (th == 1.0) return {base_x, base_y};
    const double z = p.z(x, y);
    const double lw = log1m_exp_neg(z);
    const double log_s = std::log(-std::expm1(th * lw));
    const double common = std::exp(std::log(th) - z + (th - 1.0) * lw - log_s);
    return {base_x * common, base_y * common};
}

double local_dependence(const BgwParams& p, double x, double y) {
    require_pos(x, y, "local_dependence");
    const double a = p.a(), th = p.theta();
    if (th == 1.0) return 0.0;
    const double z = p.z(x, y);
    const double u = std::exp(-z);
    const double w = -std::expm1(-z);
    const double pre = std::exp(2.0 * std::log(a) + std::log(p.b1() * p.b2()) +
                                (a - 1.0) * (std::log(x) + std::log(y)) - z);
    const double d = 1.0 - th * u;
    return pre * ((2.0 - th) / (w * w) - th / (d * d));
}

void write_density_grid(std::ostream& out, const BgwParams& p, const GridSpec& grid) {
    if (!(grid.x_max > 0.0) || !(grid.y_max > 0.0) || grid.nx == 0 || grid.ny == 0) {
        throw DomainError("density grid: extents and counts must be positive");
    }
    out << "x,y,F,f\n" << std::setprecision(12);
    for (std::size_t i = 1; i <= grid.nx; ++i) {
        const double x = grid.x_max * static_cast<double>(i) / static_cast<double>(grid.nx);
        for (std::size_t j = 1; j <= grid.ny; ++j) {
            const double y = grid.y_max * static_cast<double>(j) / static_cast<double>(grid.ny);
            out << x << ',' << y << ',' << cdf(p, x, y) << ',' << pdf(p, x, y) << '\n';
        }
    }
}

}  // namespace bgw
