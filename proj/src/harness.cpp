#include "bgw/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "bgw/errors.hpp"
#include "bgw/mle.hpp"
#include "bgw/rank_stats.hpp"
#include "bgw/rng.hpp"
#include "bgw/sampling.hpp"

namespace bgw {

void ExperimentConfig::validate() const {
    if (replications < 1) throw DomainError("experiment: replications must be >= 1");
    if (sample_sizes.empty()) throw DomainError("experiment: no sample sizes");
    for (auto n : sample_sizes) {
        if (n < 5) throw DomainError("experiment: sample sizes must be >= 5");
    }
    if (starts < 1) throw DomainError("experiment: starts must be >= 1");
    if (estimator == EstimatorKind::Bayes) {
        bayes.prior.validate();
        if (bayes.c == 0.0) throw DomainError("experiment: c must be nonzero");
        if (bayes.burn_in >= bayes.iterations) throw DomainError("experiment: burnin must be < iters");
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw DataError("config: cannot parse number '" + item + "'");
        }
        if (used != item.size()) throw DataError("config: cannot parse number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const auto nums = [&] { return parse_list(value); };
    const auto one = [&] {
        const auto v = nums();
        if (v.size() != 1) throw DataError("config: " + key + " takes one value");
        return v[0];
    };
    if (key == "params") {
        const auto v = nums();
        if (v.size() != 4) throw DataError("config: params takes a,b1,b2,theta");
        cfg.true_params = BgwParams(v[0], v[1], v[2], v[3]);
    } else if (key == "sizes") {
        cfg.sample_sizes.clear();
        for (double v : nums()) cfg.sample_sizes.push_back(static_cast<std::size_t>(v));
    } else if (key == "reps") {
        cfg.replications = static_cast<std::size_t>(one());
    } else if (key == "estimator") {
        if (value == "mle") {
            cfg.estimator = EstimatorKind::Mle;
        } else if (value == "bayes") {
            cfg.estimator = EstimatorKind::Bayes;
        } else {
            throw DataError("config: estimator must be mle or bayes");
        }
    } else if (key == "prior") {
        const auto v = nums();
        if (v.size() != 8) throw DataError("config: prior takes d1,z1,d2,z2,d3,z3,d4,z4");
        for (int i = 0; i < 4; ++i) {
            cfg.bayes.prior.delta[i] = v[2 * i];
            cfg.bayes.prior.zeta[i] = v[2 * i + 1];
        }
    } else if (key == "c") {
        cfg.bayes.c = one();
    } else if (key == "iters") {
        cfg.bayes.iterations = static_cast<std::size_t>(one());
    } else if (key == "burnin") {
        cfg.bayes.burn_in = static_cast<std::size_t>(one());
    } else if (key == "seed") {
        cfg.master_seed = static_cast<std::uint64_t>(one());
    } else if (key == "starts") {
        cfg.starts = static_cast<int>(one());
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(one());
    } else {
        throw DataError("config: unknown key '" + key + "'");
    }
}

std::string json_value_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += ',';
            s += json_value_text(e);
        }
        return s;
    }
    std::ostringstream os;
    os << std::setprecision(17) << v.get<double>();
    return os.str();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig cfg;
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(std::string("config: invalid JSON: ") + e.what());
        }
        for (const auto& [k, v] : j.items()) apply_key(cfg, k, json_value_text(v));
    } else {
        std::stringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) {
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw DataError("config: expected key=value, got '" + line + "'");
            apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    cfg.validate();
    return cfg;
}

unsigned default_workers() {
    if (const char* env = std::getenv("BGW_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Replicate {
    std::array<double, 4> est{};
    bool ok = false;
};

Replicate run_one(const ExperimentConfig& cfg, std::size_t n_index, std::size_t rep) {
    Rng rng = Rng::substream(cfg.master_seed, (static_cast<std::uint64_t>(n_index) << 32) | rep);
    const BivariateSample data = sample_n(cfg.true_params, cfg.sample_sizes[n_index], rng);
    const std::uint64_t est_seed = rng.next_u64();
    Replicate r;
    try {
        if (cfg.estimator == EstimatorKind::Mle) {
            FitOptions fo;
            fo.starts = cfg.starts;
            fo.seed = est_seed;
            const FitResult fit = fit_mle(data, std::nullopt, fo);
            r.est = fit.params.as_array();
            r.ok = fit.converged;
        } else {
            McmcOptions mo;
            mo.iterations = cfg.bayes.iterations;
            mo.burn_in = cfg.bayes.burn_in;
            mo.seed = est_seed;
            const Chain ch = run_mcmc(data, cfg.bayes.prior, mo);
            r.est = ge_estimate(ch, cfg.bayes.c).as_array();
            r.ok = true;
        }
    } catch (const std::exception&) {
        r.ok = false;
    }
    return r;
}

}  // namespace

std::vector<BiasMseRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t reps = cfg.replications;
    const std::size_t total = reps * cfg.sample_sizes.size();
    std::vector<Replicate> results(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) results[k] = run_one(cfg, k / reps, k % reps);
    };
    const unsigned nw = std::min<std::size_t>(cfg.threads ? cfg.threads : default_workers(), total);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nw; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    const auto truth = cfg.true_params.as_array();
    std::vector<BiasMseRow> rows;
    for (std::size_t ni = 0; ni < cfg.sample_sizes.size(); ++ni) {
        BiasMseRow row;
        row.n = cfg.sample_sizes[ni];
        for (std::size_t r = 0; r < reps; ++r) {
            const Replicate& rep = results[ni * reps + r];
            if (!rep.ok) {
                ++row.failed;
                continue;
            }
            ++row.used;
            for (int k = 0; k < 4; ++k) {
                const double d = rep.est[k] - truth[k];
                row.bias[k] += d;
                row.mse[k] += d * d;
            }
        }
        if (row.used > 0) {
            for (int k = 0; k < 4; ++k) {
                row.bias[k] /= static_cast<double>(row.used);
                row.mse[k] /= static_cast<double>(row.used);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

void write_bias_mse_csv(std::ostream& out, const std::vector<BiasMseRow>& rows) {
    out << "n,bias_a,bias_b1,bias_b2,bias_theta,mse_a,mse_b1,mse_b2,mse_theta,used,failed\n"
        << std::setprecision(8);
    for (const auto& r : rows) {
        out << r.n;
        for (double v : r.bias) out << ',' << v;
        for (double v : r.mse) out << ',' << v;
        out << ',' << r.used << ',' << r.failed << '\n';
    }
}

namespace {

nlohmann::json describe_json(std::span<const double> v) {
    const Descriptive d = describe(v);
    return {{"min", d.min},   {"q1", d.q1}, {"median", d.median},     {"q3", d.q3},
            {"max", d.max},   {"mean", d.mean}, {"sd", d.sd}, {"skewness", d.skewness},
            {"kurtosis", d.kurtosis}};
}

nlohmann::json fit_json(const FitResult& f) {
    return {{"a", f.params.a()},
            {"b1", f.params.b1()},
            {"b2", f.params.b2()},
            {"theta", f.params.theta()},
            {"loglik", f.log_lik},
            {"aic", f.aic},
            {"bic", f.bic},
            {"converged", f.converged},
            {"n_iter", f.n_iter},
            {"gradient_norm", f.gradient_norm},
            {"theta_at_boundary", f.theta_at_boundary}};
}

nlohmann::json ew_json(const EwParams& e) { return {{"a", e.a()}, {"b", e.b()}, {"theta", e.theta()}}; }

nlohmann::json ks_json(const TestResult& t) { return {{"distance", t.statistic}, {"p_value", t.p_value}}; }

}  // namespace

nlohmann::json real_data_pipeline(const BivariateSample& raw, const PipelineOptions& opts) {
    raw.validate();
    if (raw.size() < 5) throw DataError("analyze: need at least 5 pairs");
    const BivariateSample data = raw.scaled(opts.scale);

    nlohmann::json rep;
    rep["n"] = raw.size();
    rep["scale"] = opts.scale;
    rep["descriptive"] = {{"x", describe_json(raw.x)}, {"y", describe_json(raw.y)}};
    rep["dependence"] = {{"pearson", pearson(raw.x, raw.y)},   {"spearman", spearman(raw.x, raw.y)},
                         {"kendall", kendall(raw.x, raw.y)},   {"footrule", footrule(raw.x, raw.y)},
                         {"blest", blest(raw.x, raw.y)}};

    FitOptions fo;
    fo.starts = opts.starts;
    fo.seed = opts.seed;
    const EwFit mx = fit_ew(data.x, fo), my = fit_ew(data.y, fo);
    nlohmann::json marg;
    marg["x"] = {{"fit", ew_json(mx.params)}, {"loglik", mx.log_lik}, {"ks", ks_json(ks_test_ew(data.x, mx.params))}};
    marg["y"] = {{"fit", ew_json(my.params)}, {"loglik", my.log_lik}, {"ks", ks_json(ks_test_ew(data.y, my.params))}};
    if (opts.ks_reference_x) {
        marg["x"]["reference"] = ew_json(*opts.ks_reference_x);
        marg["x"]["ks_reference"] = ks_json(ks_test_ew(data.x, *opts.ks_reference_x));
    }
    if (opts.ks_reference_y) {
        marg["y"]["reference"] = ew_json(*opts.ks_reference_y);
        marg["y"]["ks_reference"] = ks_json(ks_test_ew(data.y, *opts.ks_reference_y));
    }
    rep["marginals"] = marg;

    const FitResult bgw = fit_mle(data, std::nullopt, fo);
    FitOptions fe = fo;
    fe.fix_a = 1.0;
    const FitResult bge = fit_mle(data, std::nullopt, fe);
    FitOptions fr = fo;
    fr.fix_a = 2.0;
    const FitResult bgr = fit_mle(data, std::nullopt, fr);
    rep["fits"] = {{"bgw", fit_json(bgw)}, {"bge", fit_json(bge)}, {"bgr", fit_json(bgr)}};

    const TestResult t_bge = lr_test(bgw, bge, 1);
    const TestResult t_bgr = lr_test(bgw, bgr, 1);
    rep["lrt"] = {{"bge_vs_bgw", {{"statistic", t_bge.statistic}, {"p_value", t_bge.p_value}, {"df", 1}}},
                  {"bgr_vs_bgw", {{"statistic", t_bgr.statistic}, {"p_value", t_bgr.p_value}, {"df", 1}}}};
    return rep;
}

}  // namespace bgw
