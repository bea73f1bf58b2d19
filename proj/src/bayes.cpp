#include "bgw/bayes.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "bgw/distribution.hpp"
#include "bgw/errors.hpp"
#include "bgw/mle.hpp"
#include "bgw/rng.hpp"

namespace bgw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool in_support(const std::array<double, 4>& v) { return BgwParams::admissible(v[0], v[1], v[2], v[3]); }

// (zeta_4 - 1) log(1 - theta), with the theta = 1 edge handled
double beta_upper(double zeta4, double theta) {
    if (zeta4 == 1.0) return 0.0;
    if (theta >= 1.0) return zeta4 > 1.0 ? kNegInf : std::numeric_limits<double>::infinity();
    return (zeta4 - 1.0) * std::log1p(-theta);
}

// sum over data of (theta - 2) log(1 - e^-Z) + log(1 - theta e^-Z) - Z, the part shared by every coordinate
double shared_terms(const std::array<double, 4>& v, const BivariateSample& data, bool with_z) {
    const double a = v[0], b1 = v[1], b2 = v[2], th = v[3];
    double s = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double z = b1 * std::pow(data.x[i], a) + b2 * std::pow(data.y[i], a);
        const double w = -std::expm1(-z);
        if (!(w > 0.0)) return kNegInf;
        s += (th - 2.0) * std::log(w) + std::log1p(-th * std::exp(-z));
        if (with_z) s -= z;
    }
    return s;
}

}  // namespace

void PriorConfig::validate() const {
    for (int i = 0; i < 4; ++i) {
        if (!(delta[i] > 0.0) || !(zeta[i] > 0.0)) throw DomainError("prior hyperparameters must be > 0");
    }
}

std::array<double, 4> PriorConfig::means() const {
    return {delta[0] / zeta[0], delta[1] / zeta[1], delta[2] / zeta[2], delta[3] / (delta[3] + zeta[3])};
}

double log_posterior_kernel(const std::array<double, 4>& v, const PriorConfig& prior, const BivariateSample& data) {
    if (!in_support(v)) return kNegInf;
    const double ll = log_likelihood(BgwParams::from_array(v), data);
    if (ll == kNegInf) return kNegInf;
    double lp = 0.0;
    for (int i = 0; i < 3; ++i) lp += (prior.delta[i] - 1.0) * std::log(v[i]) - prior.zeta[i] * v[i];
    lp += (prior.delta[3] - 1.0) * std::log(v[3]) + beta_upper(prior.zeta[3], v[3]);
    return ll + lp;
}

double log_full_conditional(Coord which, double value, const std::array<double, 4>& v, const PriorConfig& prior,
                            const BivariateSample& data) {
    std::array<double, 4> w = v;
    const int k = static_cast<int>(which);
    w[k] = value;
    if (!in_support(w)) return kNegInf;
    const double n = static_cast<double>(data.size());
    switch (which) {
        case Coord::A: {
            // a^(2n + delta1 - 1) e^(-zeta1 a) prod (x y)^(a-1) e^-Z (1-e^-Z)^(theta-2) (1 - theta e^-Z)
            double s = (2.0 * n + prior.delta[0] - 1.0) * std::log(value) - prior.zeta[0] * value;
            for (std::size_t i = 0; i < data.size(); ++i) s += (value - 1.0) * std::log(data.x[i] * data.y[i]);
            return s + shared_terms(w, data, true);
        }
        case Coord::B1:
        case Coord::B2: {
            // b^(n + delta - 1) e^(-zeta b) prod e^-Z (1-e^-Z)^(theta-2) (1 - theta e^-Z)
            return (n + prior.delta[k] - 1.0) * std::log(value) - prior.zeta[k] * value + shared_terms(w, data, true);
        }
        case Coord::Theta: {
            // theta^(n + delta4 - 1) (1-theta)^(zeta4 - 1) prod (1-e^-Z)^(theta-2) (1 - theta e^-Z)
            return (n + prior.delta[3] - 1.0) * std::log(value) + beta_upper(prior.zeta[3], value) +
                   shared_terms(w, data, false);
        }
    }
    return kNegInf;
}

namespace {

// Random walk coordinates: log for a, b1, b2; logit for theta.
double to_z(int k, double v) { return k < 3 ? std::log(v) : std::log(v / (1.0 - v)); }
double from_z(int k, double z) { return k < 3 ? std::exp(z) : 1.0 / (1.0 + std::exp(-z)); }
// log |dv/dz|
double log_jac(int k, double v) { return k < 3 ? std::log(v) : std::log(v) + std::log1p(-v); }

}  // namespace

Chain run_mcmc(const BivariateSample& data, const PriorConfig& prior, const McmcOptions& opts) {
    prior.validate();
    if (opts.burn_in >= opts.iterations) throw DomainError("run_mcmc: burn_in must be < iterations");
    for (double s : opts.scales) {
        if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("run_mcmc: proposal scales must be > 0");
    }

    std::array<double, 4> cur{};
    if (opts.init) {
        cur = *opts.init;
    } else {
        try {
            FitOptions fo;
            fo.starts = 2;
            fo.seed = opts.seed;
            cur = fit_mle(data, std::nullopt, fo).params.as_array();
        } catch (const std::exception&) {
            cur = prior.means();
        }
    }
    // the logit walk lives on the open interval
    cur[3] = std::min(cur[3], 1.0 - 1e-6);
    double cur_lp = log_posterior_kernel(cur, prior, data);
    if (!std::isfinite(cur_lp)) {
        cur = prior.means();
        cur_lp = log_posterior_kernel(cur, prior, data);
    }
    if (!std::isfinite(cur_lp)) throw NumericalError("run_mcmc: starting point has zero posterior density");

    Chain ch;
    ch.burn_in = opts.burn_in;
    ch.seed = opts.seed;
    ch.prior = prior;
    ch.scales = opts.scales;
    for (auto& t : ch.traces) t.reserve(opts.iterations);

    Rng rng(opts.seed);
    std::array<std::size_t, 4> acc{}, window_acc{};
    constexpr std::size_t kWindow = 100;

    for (std::size_t it = 0; it < opts.iterations; ++it) {
        for (int k = 0; k < 4; ++k) {
            std::array<double, 4> prop = cur;
            const double z = to_z(k, cur[k]) + ch.scales[k] * rng.normal();
            prop[k] = from_z(k, z);
            const double log_u = std::log(rng.uniform());
            if (k == 3 && !(prop[3] > 0.0 && prop[3] < 1.0)) continue;
            const double lp = log_posterior_kernel(prop, prior, data);
            const double log_alpha = lp + log_jac(k, prop[k]) - cur_lp - log_jac(k, cur[k]);
            if (log_u < log_alpha) {
                cur = prop;
                cur_lp = lp;
                ++window_acc[k];
                if (it >= opts.burn_in) ++acc[k];
            }
        }
        for (int k = 0; k < 4; ++k) ch.traces[k].push_back(cur[k]);

        if (opts.tune && it < opts.burn_in && (it + 1) % kWindow == 0) {
            for (int k = 0; k < 4; ++k) {
                const double rate = static_cast<double>(window_acc[k]) / kWindow;
                ch.scales[k] *= std::exp(2.0 * (rate - opts.target_acceptance));
                window_acc[k] = 0;
            }
        }
    }

    const double kept = static_cast<double>(opts.iterations - opts.burn_in);
    std::ostringstream warn;
    for (int k = 0; k < 4; ++k) {
        ch.acceptance_rates[k] = acc[k] / kept;
        if (ch.acceptance_rates[k] <= 0.1 || ch.acceptance_rates[k] >= 0.6) {
            static const char* names[] = {"a", "b1", "b2", "theta"};
            warn << "acceptance rate for " << names[k] << " is " << ch.acceptance_rates[k] << "; ";
        }
    }
    ch.warning = warn.str();
    return ch;
}

double ge_estimate(const std::vector<double>& draws, std::size_t burn_in, double c) {
    if (c == 0.0) throw DomainError("ge_estimate: c must be nonzero");
    if (burn_in >= draws.size()) throw DomainError("ge_estimate: no draws after burn-in");
    double s = 0.0;
    for (std::size_t i = burn_in; i < draws.size(); ++i) s += std::pow(draws[i], -c);
    return std::pow(s / static_cast<double>(draws.size() - burn_in), -1.0 / c);
}

BgwParams ge_estimate(const Chain& chain, double c) {
    std::array<double, 4> v{};
    for (int k = 0; k < 4; ++k) v[k] = ge_estimate(chain.traces[k], chain.burn_in, c);
    v[3] = std::min(v[3], 1.0);
    return BgwParams::from_array(v);
}

void write_chain_csv(std::ostream& out, const Chain& chain) {
    out << "iter,a,b1,b2,theta\n" << std::setprecision(12);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        out << i + 1 << ',' << chain.traces[0][i] << ',' << chain.traces[1][i] << ',' << chain.traces[2][i] << ','
            << chain.traces[3][i] << '\n';
    }
}

}  // namespace bgw
