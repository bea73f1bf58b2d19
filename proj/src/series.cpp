#include "bgw/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bgw/errors.hpp"

namespace bgw {

void SeriesControl::validate() const {
    if (!(tol > 0.0)) throw DomainError("SeriesControl: tol must be positive");
    if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
}

namespace {

// Remainder of a same-sign power-law tail t_j ~ c j^-p beyond index `last`.
// Returns false when the decay is not summable or the shape is not power-like.
bool power_law_tail(const std::vector<double>& terms, std::size_t first, double* tail,
                    double* exponent) {
    const std::size_t n = terms.size();
    if (n < 8) return false;
    const double t_last = terms[n - 1];
    if (t_last == 0.0) return false;
    const std::size_t m_pos = n / 2;
    for (std::size_t k = m_pos; k < n; ++k) {
        if (terms[k] == 0.0 || std::signbit(terms[k]) != std::signbit(t_last)) return false;
    }
    const double j_last = static_cast<double>(first + n - 1);
    const double j_mid = static_cast<double>(first + m_pos);
    if (j_mid < 1.0) return false;
    const double p = std::log(terms[m_pos] / t_last) / std::log(j_last / j_mid);
    *exponent = p;
    if (!(p > 1.0) || !std::isfinite(p)) return false;
    // sum_{j > J} c j^-p  ~  c (J + 1/2)^(1-p) / (p - 1),  c = t_J J^p
    *tail = t_last * std::pow(j_last, p) * std::pow(j_last + 0.5, 1.0 - p) / (p - 1.0);
    return std::isfinite(*tail);
}

}  // namespace

SeriesResult sum_series(const std::function<double(std::size_t)>& term, const SeriesControl& ctrl,
                        std::size_t first) {
    ctrl.validate();
    SeriesResult out;
    std::vector<double> seen;
    if (ctrl.tail_correction) seen.reserve(std::min<std::size_t>(ctrl.max_terms, 4096));

    // Kahan summation: the moment and copula series add ~1e5 positive terms.
    double sum = 0.0, comp = 0.0;
    int small_run = 0;
    std::size_t j = first;
    for (std::size_t k = 0; k < ctrl.max_terms; ++k, ++j) {
        const double t = term(j);
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (ctrl.tail_correction) seen.push_back(t);
        out.terms = k + 1;
        out.last_term = t;
        small_run = std::abs(t) < ctrl.tol ? small_run + 1 : 0;
        if (small_run >= 2) {
            out.reason = StopReason::Tolerance;
            break;
        }
    }

    double tail = 0.0, p = 0.0;
    const bool have_tail = ctrl.tail_correction && power_law_tail(seen, first, &tail, &p);
    if (out.reason != StopReason::Tolerance) {
        out.reason = have_tail ? StopReason::TailExtrapolated : StopReason::MaxTerms;
    }
    if (have_tail) {
        out.tail = tail;
        sum += tail;
    }
    out.value = sum;
    return out;
}

double series_value(const std::function<double(std::size_t)>& term, const SeriesControl& ctrl,
                    std::size_t first, const char* what) {
    const SeriesResult r = sum_series(term, ctrl, first);
    if (!r.converged()) {
        throw NumericalError(std::string(what) + ": series did not converge after " +
                             std::to_string(r.terms) + " terms (last term " +
                             std::to_string(r.last_term) + ")");
    }
    return r.value;
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(x) for x >= 0.5
double lanczos_log_gamma(double x) {
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double log_gamma_any_positive(double x) {
    if (x >= 0.5) return lanczos_log_gamma(x);
    // reflection; x in (0, 0.5)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - lanczos_log_gamma(1.0 - x);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    if (x == 1.0 || x == 2.0) return 0.0;
    return log_gamma_any_positive(x);
}

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli asymptotic series
    const double poly =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
    return shift + std::log(x) - 0.5 * inv - poly;
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: arguments must be positive");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: arguments must be positive");
    // integer second argument: B(a, n) = (n-1)! / (a (a+1) ... (a+n-1)), exact for small n
    if (b == std::floor(b) && b <= 20.0) {
        double r = 1.0;
        for (int k = 0; k < static_cast<int>(b); ++k) r *= (k == 0 ? 1.0 : k) / (a + k);
        return r;
    }
    return std::exp(log_beta(a, b));
}

double special(SpecialFunction fn, std::span<const double> args) {
    switch (fn) {
        case SpecialFunction::LogGamma:
            if (args.size() != 1) throw DomainError("log_gamma takes one argument");
            return log_gamma(args[0]);
        case SpecialFunction::Digamma:
            if (args.size() != 1) throw DomainError("digamma takes one argument");
            return digamma(args[0]);
        case SpecialFunction::Beta:
            if (args.size() != 2) throw DomainError("beta takes two arguments");
            return beta(args[0], args[1]);
    }
    throw DomainError("unknown special function");
}

double gen_binom(double alpha, std::size_t j) {
    if (j == 0) return 1.0;
    // nonnegative integer alpha: the product hits zero at i = alpha
    if (alpha >= 0.0 && alpha == std::floor(alpha) && static_cast<double>(j) > alpha) return 0.0;
    const double m_real = alpha >= 0.0 ? std::floor(alpha) + 1.0 : 0.0;
    if (j <= 20 || m_real >= static_cast<double>(j)) {
        double r = 1.0;
        for (std::size_t i = 0; i < j; ++i) r *= (alpha - static_cast<double>(i)) / static_cast<double>(i + 1);
        return r;
    }
    // prod_{i<m} (alpha - i) is positive, prod_{m<=i<j} (alpha - i) has sign (-1)^(j-m)
    const auto m = static_cast<std::size_t>(m_real);
    const double jd = static_cast<double>(j);
    double log_abs = log_gamma(jd - alpha) - log_gamma(m_real - alpha) - log_gamma(jd + 1.0);
    if (m > 0) log_abs += log_gamma(alpha + 1.0) - log_gamma(alpha - m_real + 1.0);
    const double sign = ((j - m) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(log_abs);
}

}  // namespace bgw
