#include "bgw/mle.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "bgw/distribution.hpp"
#include "bgw/errors.hpp"
#include "bgw/rng.hpp"

namespace bgw {

namespace {

constexpr double kThetaEps = 1e-6;
constexpr double kBoundary = 1.0 - 1e-4;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logistic(double e) { return 1.0 / (1.0 + std::exp(-e)); }
double to_theta(double e) { return kThetaEps + (1.0 - kThetaEps) * logistic(e); }
double from_theta(double th) {
    const double s = std::clamp((th - kThetaEps) / (1.0 - kThetaEps), 1e-12, 1.0 - 1e-12);
    return std::log(s / (1.0 - s));
}

void require_data(const BivariateSample& data) {
    if (data.empty()) throw DomainError("likelihood: empty sample");
    if (data.x.size() != data.y.size()) throw DomainError("likelihood: x and y lengths differ");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!(data.x[i] > 0.0) || !(data.y[i] > 0.0)) throw DomainError("likelihood: observations must be > 0");
    }
}

double sd_log(std::span<const double> v) {
    double m = 0.0;
    for (double t : v) m += std::log(t);
    m /= v.size();
    double s = 0.0;
    for (double t : v) s += (std::log(t) - m) * (std::log(t) - m);
    return std::sqrt(s / (v.size() - 1));
}

// Weibull shape from the spread of log data, then rates from the a-th moment.
std::array<double, 4> heuristic_start(const BivariateSample& data, std::optional<double> fix_a) {
    double a = fix_a.value_or(0.0);
    if (!fix_a) {
        const double k = std::numbers::pi / std::sqrt(6.0);
        const double sx = sd_log(data.x), sy = sd_log(data.y);
        a = 0.5 * (k / std::max(sx, 1e-3) + k / std::max(sy, 1e-3));
        a = std::clamp(a, 0.05, 50.0);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        mx += std::pow(data.x[i], a);
        my += std::pow(data.y[i], a);
    }
    const double n = static_cast<double>(data.size());
    return {a, n / mx, n / my, 0.5};
}

struct Transform {
    std::optional<double> fix_a;

    std::size_t dim() const { return fix_a ? 3 : 4; }

    std::vector<double> to_free(const std::array<double, 4>& v) const {
        std::vector<double> z;
        if (!fix_a) z.push_back(std::log(v[0]));
        z.push_back(std::log(v[1]));
        z.push_back(std::log(v[2]));
        z.push_back(from_theta(v[3]));
        return z;
    }

    std::array<double, 4> from_free(std::span<const double> z) const {
        std::size_t k = 0;
        const double a = fix_a ? *fix_a : std::exp(z[k++]);
        const double b1 = std::exp(z[k++]);
        const double b2 = std::exp(z[k++]);
        return {a, b1, b2, to_theta(z[k])};
    }
};

double neg_ll(const Transform& tr, std::span<const double> z, const BivariateSample& data) {
    const auto v = tr.from_free(z);
    if (!BgwParams::admissible(v[0], v[1], v[2], v[3])) return std::numeric_limits<double>::infinity();
    const double ll = log_likelihood(BgwParams::from_array(v), data);
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
}

}  // namespace

double log_likelihood(const BgwParams& p, const BivariateSample& data) {
    require_data(data);
    double s = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double l = log_pdf(p, data.x[i], data.y[i]);
        if (l == kNegInf) return kNegInf;
        s += l;
    }
    return s;
}

std::array<double, 4> score(const BgwParams& p, const BivariateSample& data) {
    require_data(data);
    const double a = p.a(), b1 = p.b1(), b2 = p.b2(), th = p.theta();
    const double n = static_cast<double>(data.size());
    std::array<double, 4> g{2.0 * n / a, n / b1, n / b2, n / th};
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double lx = std::log(data.x[i]), ly = std::log(data.y[i]);
        const double xa = std::pow(data.x[i], a), ya = std::pow(data.y[i], a);
        const double z = b1 * xa + b2 * ya;
        const double u = std::exp(-z);
        const double u_over_w = 1.0 / std::expm1(z);
        const double d = 1.0 - th * u;
        // d l_i / d Z
        const double lz = -1.0 + (th - 2.0) * u_over_w + th * u / d;
        g[0] += lx + ly + lz * (b1 * xa * lx + b2 * ya * ly);
        g[1] += lz * xa;
        g[2] += lz * ya;
        g[3] += std::log(-std::expm1(-z)) - u / d;
    }
    return g;
}

FitResult fit_mle(const BivariateSample& data, const std::optional<BgwParams>& init, const FitOptions& opts) {
    require_data(data);
    if (data.size() < 5) throw DataError("fit_mle: need at least 5 observations");
    const bool x_const = std::all_of(data.x.begin(), data.x.end(), [&](double v) { return v == data.x[0]; });
    const bool y_const = std::all_of(data.y.begin(), data.y.end(), [&](double v) { return v == data.y[0]; });
    if (x_const || y_const) throw DataError("fit_mle: degenerate data (a coordinate is constant)");
    if (opts.fix_a && !(*opts.fix_a > 0.0)) throw DomainError("fit_mle: fixed a must be > 0");
    if (opts.starts < 1) throw DomainError("fit_mle: starts must be >= 1");

    const Transform tr{opts.fix_a};
    auto objective = [&](std::span<const double> z) { return neg_ll(tr, z, data); };

    std::array<double, 4> first = heuristic_start(data, opts.fix_a);
    if (init) {
        first = init->as_array();
        if (opts.fix_a) first[0] = *opts.fix_a;
    }
    const std::vector<double> z0 = tr.to_free(first);

    Rng rng(opts.seed);
    NelderMeadResult best;
    best.f = std::numeric_limits<double>::infinity();
    std::size_t iters = 0;
    for (int s = 0; s < opts.starts; ++s) {
        std::vector<double> z = z0;
        if (s > 0) {
            for (std::size_t k = 0; k + 1 < z.size(); ++k) z[k] += 0.3 * rng.normal();
            z.back() += 1.0 * rng.normal();
        }
        NelderMeadResult r = nelder_mead(objective, z, opts.nm);
        iters += r.iterations;
        if (r.f < best.f) best = std::move(r);
    }
    if (!std::isfinite(best.f)) throw NumericalError("fit_mle: no start produced a finite likelihood");

    // polish from the best point with a fresh simplex
    NelderMeadOptions polish = opts.nm;
    polish.initial_step = 0.02;
    NelderMeadResult r = nelder_mead(objective, best.x, polish);
    iters += r.iterations;
    if (r.f <= best.f) {
        best = std::move(r);
    } else {
        best.converged = best.converged && r.converged;
    }

    FitResult out;
    const auto v = tr.from_free(best.x);
    out.params = BgwParams::from_array(v);
    out.log_lik = -best.f;
    out.n_free = static_cast<int>(tr.dim());
    out.n_obs = data.size();
    out.aic = 2.0 * out.n_free - 2.0 * out.log_lik;
    out.bic = out.n_free * std::log(static_cast<double>(data.size())) - 2.0 * out.log_lik;
    out.n_iter = iters;
    out.theta_at_boundary = v[3] > kBoundary;

    const auto g = score(out.params, data);
    const double sig = logistic(best.x.back());
    std::vector<double> gz;
    if (!opts.fix_a) gz.push_back(g[0] * v[0]);
    gz.push_back(g[1] * v[1]);
    gz.push_back(g[2] * v[2]);
    gz.push_back(g[3] * (1.0 - kThetaEps) * sig * (1.0 - sig));
    out.gradient_norm = std::sqrt(std::inner_product(gz.begin(), gz.end(), gz.begin(), 0.0));
    out.converged = best.converged && std::isfinite(out.log_lik);
    return out;
}

namespace {

// Solves A x = e_k for each k by Gauss-Jordan with partial pivoting; returns false when singular.
bool invert(std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        }
        if (std::abs(m[piv][c]) < 1e-300) return false;
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        const double d = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= d;
            inv[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    m = std::move(inv);
    return true;
}

}  // namespace

std::array<double, 4> standard_errors(const FitResult& fit, const BivariateSample& data) {
    const bool fixed_a = fit.n_free == 3;
    std::vector<int> idx;
    for (int k = fixed_a ? 1 : 0; k < 4; ++k) idx.push_back(k);
    const auto base = fit.params.as_array();
    const std::size_t m = idx.size();
    std::vector<std::vector<double>> h(m, std::vector<double>(m));
    for (std::size_t c = 0; c < m; ++c) {
        const int k = idx[c];
        const double step = 1e-5 * std::max(1.0, std::abs(base[k]));
        auto plus = base, minus = base;
        plus[k] += step;
        minus[k] -= step;
        if (k == 3 && plus[3] > 1.0) {
            plus[3] = 1.0;
            minus[3] = 1.0 - 2.0 * step;
        }
        const auto gp = score(BgwParams::from_array(plus), data);
        const auto gm = score(BgwParams::from_array(minus), data);
        for (std::size_t r = 0; r < m; ++r) h[r][c] = -(gp[idx[r]] - gm[idx[r]]) / (plus[k] - minus[k]);
    }
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = r + 1; c < m; ++c) h[r][c] = h[c][r] = 0.5 * (h[r][c] + h[c][r]);
    }
    std::array<double, 4> se{};
    if (!invert(h)) throw NumericalError("standard_errors: observed information is singular");
    for (std::size_t r = 0; r < m; ++r) {
        se[idx[r]] = h[r][r] > 0.0 ? std::sqrt(h[r][r]) : std::numeric_limits<double>::quiet_NaN();
    }
    return se;
}

TestResult lr_test(const FitResult& full, const FitResult& restricted, int df) {
    if (df < 1) throw DomainError("lr_test: df must be >= 1");
    const double stat = -2.0 * (restricted.log_lik - full.log_lik);
    if (stat < 0.0) {
        throw NumericalError("lr_test: restricted model has higher likelihood than the full model");
    }
    return {stat, boost::math::gamma_q(0.5 * df, 0.5 * stat)};
}

double kolmogorov_q(double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("kolmogorov_q: lambda must be >= 0");
    if (lambda < 0.2) return 1.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double t = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 == 1 ? t : -t);
        if (t < 1e-17) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

TestResult ks_test_ew(std::span<const double> data, const EwParams& e) {
    if (data.empty()) throw DataError("ks_test_ew: empty data");
    std::vector<double> v(data.begin(), data.end());
    for (double t : v) {
        if (!(t > 0.0) || !std::isfinite(t)) throw DataError("ks_test_ew: data must be > 0");
    }
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = marginal_cdf(e, v[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, kolmogorov_q(std::sqrt(n) * d)};
}

double ew_log_likelihood(const EwParams& e, std::span<const double> data) {
    double s = 0.0;
    for (double t : data) {
        if (!(t > 0.0)) throw DomainError("ew_log_likelihood: data must be > 0");
        const double f = marginal_pdf(e, t);
        if (!(f > 0.0)) return kNegInf;
        s += std::log(f);
    }
    return s;
}

EwFit fit_ew(std::span<const double> data, const FitOptions& opts) {
    if (data.size() < 3) throw DataError("fit_ew: need at least 3 observations");
    const double k = std::numbers::pi / std::sqrt(6.0);
    const double a0 = std::clamp(k / std::max(sd_log(data), 1e-3), 0.05, 50.0);
    double m = 0.0;
    for (double t : data) m += std::pow(t, a0);
    const double b0 = static_cast<double>(data.size()) / m;

    auto objective = [&](std::span<const double> z) {
        const double a = std::exp(z[0]), b = std::exp(z[1]), th = to_theta(z[2]);
        if (!(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b))) {
            return std::numeric_limits<double>::infinity();
        }
        return -ew_log_likelihood(EwParams(a, b, th), data);
    };
    const std::vector<double> z0{std::log(a0), std::log(b0), from_theta(0.9)};
    Rng rng(opts.seed);
    NelderMeadResult best;
    best.f = std::numeric_limits<double>::infinity();
    for (int s = 0; s < std::max(opts.starts, 1); ++s) {
        std::vector<double> z = z0;
        if (s > 0) {
            z[0] += 0.3 * rng.normal();
            z[1] += 0.3 * rng.normal();
            z[2] += rng.normal();
        }
        NelderMeadResult r = nelder_mead(objective, z, opts.nm);
        if (r.f < best.f) best = std::move(r);
    }
    if (!std::isfinite(best.f)) throw NumericalError("fit_ew: no finite likelihood");
    NelderMeadOptions polish = opts.nm;
    polish.initial_step = 0.02;
    NelderMeadResult r = nelder_mead(objective, best.x, polish);
    if (r.f <= best.f) best = std::move(r);
    return {EwParams(std::exp(best.x[0]), std::exp(best.x[1]), to_theta(best.x[2])), -best.f, best.converged};
}

}  // namespace bgw
