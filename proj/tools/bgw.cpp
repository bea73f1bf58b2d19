// Command-line front end: sample, fit, bayes, dependence, simulate, analyze,
// gof, density-grid. Exit codes: 0 ok, 1 usage, 2 data error, 3 numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bgw/bayes.hpp"
#include "bgw/copula.hpp"
#include "bgw/distribution.hpp"
#include "bgw/errors.hpp"
#include "bgw/harness.hpp"
#include "bgw/mle.hpp"
#include "bgw/rank_stats.hpp"
#include "bgw/sample.hpp"
#include "bgw/sampling.hpp"

namespace {

using nlohmann::json;

bgw::BivariateSample load(const std::string& path) {
    if (path == "-") return bgw::read_csv(std::cin);
    return bgw::read_csv_file(path);
}

bgw::BgwParams to_params(const std::vector<double>& v) {
    if (v.size() != 4) throw bgw::DomainError("--params takes a,b1,b2,theta");
    return {v[0], v[1], v[2], v[3]};
}

// Writes to `path`, or standard output when empty or "-".
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw bgw::DataError("cannot write " + path);
    write(out);
}

void print_json(const json& j, const std::string& path = {}) {
    emit(path, [&](std::ostream& os) { os << std::setw(2) << j << '\n'; });
}

}  // namespace

using bgw::BivariateSample;

int main(int argc, char** argv) {
    CLI::App app{"Bivariate generalized Weibull toolkit"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "Draw pairs, CSV to stdout");
    std::vector<double> s_params;
    std::size_t s_n = 100;
    std::uint64_t s_seed = 1;
    std::string s_out;
    sample->add_option("--params", s_params, "a,b1,b2,theta")->required()->delimiter(',');
    sample->add_option("--n", s_n, "number of pairs")->check(CLI::PositiveNumber);
    sample->add_option("--seed", s_seed, "RNG seed");
    sample->add_option("--out", s_out, "output file (default stdout)");

    // fit
    auto* fit = app.add_subcommand("fit", "Maximum likelihood fit, JSON to stdout");
    std::string f_data;
    double f_fix_a = 0.0;
    int f_starts = 5;
    std::uint64_t f_seed = 1;
    double f_scale = 1.0;
    fit->add_option("--data", f_data, "CSV with x,y header ('-' for stdin)")->required();
    auto* f_fix_opt = fit->add_option("--fix-a", f_fix_a, "hold the shape a fixed (1: BGE, 2: BGR)");
    fit->add_option("--starts", f_starts, "multistart count")->check(CLI::PositiveNumber);
    fit->add_option("--seed", f_seed, "seed for start jitter");
    fit->add_option("--scale", f_scale, "divide data by this factor before fitting");

    // bayes
    auto* bayes = app.add_subcommand("bayes", "MCMC under gamma/beta priors, general entropy loss estimates");
    std::string b_data, b_trace = "chain.csv";
    std::vector<double> b_prior{1.5, 1.5, 1.5, 1.5, 1.5, 1.5, 1.5, 1.5};
    double b_c = 0.5, b_scale = 1.0;
    std::size_t b_iters = 10000, b_burn = 2000;
    std::uint64_t b_seed = 1;
    bayes->add_option("--data", b_data, "CSV with x,y header")->required();
    bayes->add_option("--prior", b_prior, "d1,z1,d2,z2,d3,z3,d4,z4")->delimiter(',')->expected(8);
    bayes->add_option("--c", b_c, "general entropy loss parameter (nonzero)");
    bayes->add_option("--iters", b_iters, "iterations T");
    bayes->add_option("--burnin", b_burn, "burn-in N");
    bayes->add_option("--seed", b_seed, "RNG seed");
    bayes->add_option("--trace", b_trace, "chain CSV path");
    bayes->add_option("--scale", b_scale, "divide data by this factor");

    // dependence
    auto* dep = app.add_subcommand("dependence", "Copula dependence measures, JSON");
    double d_theta = 0.5;
    std::size_t d_mc = 200000;
    std::uint64_t d_seed = 1;
    std::string d_sweep;
    dep->add_option("--theta", d_theta, "copula parameter in (0,1]");
    dep->add_option("--mc-n", d_mc, "pairs for the Monte Carlo tau")->check(CLI::PositiveNumber);
    dep->add_option("--seed", d_seed, "RNG seed");
    dep->add_option("--sweep", d_sweep, "also write the theta = 0.01..1 sweep CSV here");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Bias/MSE simulation study, CSV");
    std::string m_config, m_out;
    std::size_t m_reps = 0;
    sim->add_option("--config", m_config, "key=value or JSON config file")->required();
    sim->add_option("--reps", m_reps, "override replications");
    sim->add_option("--out", m_out, "output CSV (default stdout)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Real-data report, JSON");
    std::string a_data, a_out;
    double a_scale = 10.0;
    int a_starts = 5;
    std::uint64_t a_seed = 1;
    ana->add_option("--data", a_data, "CSV with x,y header")->required();
    ana->add_option("--scale", a_scale, "divide data by this factor before fitting");
    ana->add_option("--starts", a_starts, "multistart count")->check(CLI::PositiveNumber);
    ana->add_option("--seed", a_seed, "seed for start jitter");
    ana->add_option("--out", a_out, "output file (default stdout)");

    // gof
    auto* gof = app.add_subcommand("gof", "KS test of one column against an EW law");
    std::string g_data, g_col = "x";
    std::vector<double> g_params;
    double g_scale = 1.0;
    gof->add_option("--data", g_data, "CSV with x,y header")->required();
    gof->add_option("--column", g_col, "x or y")->check(CLI::IsMember({"x", "y"}));
    gof->add_option("--params", g_params, "a,b,theta (default: fitted)")->delimiter(',')->expected(3);
    gof->add_option("--scale", g_scale, "divide data by this factor");

    // density-grid
    auto* grid = app.add_subcommand("density-grid", "x,y,F,f grid as CSV");
    std::vector<double> r_params;
    bgw::GridSpec r_spec;
    std::string r_out;
    grid->add_option("--params", r_params, "a,b1,b2,theta")->required()->delimiter(',');
    grid->add_option("--xmax", r_spec.x_max);
    grid->add_option("--ymax", r_spec.y_max);
    grid->add_option("--nx", r_spec.nx);
    grid->add_option("--ny", r_spec.ny);
    grid->add_option("--out", r_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sample) {
            const auto p = to_params(s_params);
            bgw::Rng rng(s_seed);
            const BivariateSample data = bgw::sample_n(p, s_n, rng);
            emit(s_out, [&](std::ostream& os) { bgw::write_csv(os, data); });
        } else if (*fit) {
            const BivariateSample data = load(f_data).scaled(f_scale);
            bgw::FitOptions fo;
            fo.starts = f_starts;
            fo.seed = f_seed;
            if (*f_fix_opt) fo.fix_a = f_fix_a;
            const bgw::FitResult r = bgw::fit_mle(data, std::nullopt, fo);
            print_json({{"a", r.params.a()},
                        {"b1", r.params.b1()},
                        {"b2", r.params.b2()},
                        {"theta", r.params.theta()},
                        {"loglik", r.log_lik},
                        {"aic", r.aic},
                        {"bic", r.bic},
                        {"converged", r.converged},
                        {"n_iter", r.n_iter}});
        } else if (*bayes) {
            const BivariateSample data = load(b_data).scaled(b_scale);
            bgw::PriorConfig prior;
            for (int i = 0; i < 4; ++i) {
                prior.delta[i] = b_prior[2 * i];
                prior.zeta[i] = b_prior[2 * i + 1];
            }
            bgw::McmcOptions mo;
            mo.iterations = b_iters;
            mo.burn_in = b_burn;
            mo.seed = b_seed;
            const bgw::Chain ch = bgw::run_mcmc(data, prior, mo);
            const bgw::BgwParams est = bgw::ge_estimate(ch, b_c);
            emit(b_trace, [&](std::ostream& os) { bgw::write_chain_csv(os, ch); });
            json j{{"a", est.a()},
                   {"b1", est.b1()},
                   {"b2", est.b2()},
                   {"theta", est.theta()},
                   {"c", b_c},
                   {"iterations", b_iters},
                   {"burn_in", b_burn},
                   {"acceptance_rates", ch.acceptance_rates},
                   {"trace", b_trace}};
            if (!ch.warning.empty()) j["warning"] = ch.warning;
            print_json(j);
        } else if (*dep) {
            const auto [lo, hi] = bgw::tail_dependence(d_theta);
            // the copula does not depend on a, b1, b2
            bgw::Rng rng(d_seed);
            const BivariateSample mc = bgw::sample_n(bgw::BgwParams(1.0, 1.0, 1.0, d_theta), d_mc, rng);
            print_json({{"theta", d_theta},
                        {"rho", bgw::spearman_rho(d_theta)},
                        {"tau",
                         {{"formula", bgw::kendall_tau_formula(d_theta)},
                          {"numeric", bgw::kendall_tau_numeric(d_theta)},
                          {"monte_carlo", bgw::kendall(mc.x, mc.y)},
                          {"monte_carlo_n", d_mc}}},
                        {"phi", bgw::footrule_phi(d_theta)},
                        {"blest", bgw::blest_B(d_theta)},
                        {"r", bgw::regression_dependence_r(d_theta)},
                        {"tail_lower", lo},
                        {"tail_upper", hi}});
            if (!d_sweep.empty()) {
                const auto rows = bgw::dependence_sweep(100);
                emit(d_sweep, [&](std::ostream& os) { bgw::write_dependence_csv(os, rows); });
            }
        } else if (*sim) {
            std::ifstream in(m_config);
            if (!in) throw bgw::DataError("cannot open " + m_config);
            std::stringstream ss;
            ss << in.rdbuf();
            bgw::ExperimentConfig cfg = bgw::parse_experiment_config(ss.str());
            if (m_reps > 0) cfg.replications = m_reps;
            const auto rows = bgw::run_experiment(cfg);
            emit(m_out, [&](std::ostream& os) { bgw::write_bias_mse_csv(os, rows); });
        } else if (*ana) {
            bgw::PipelineOptions po;
            po.scale = a_scale;
            po.starts = a_starts;
            po.seed = a_seed;
            print_json(bgw::real_data_pipeline(load(a_data), po), a_out);
        } else if (*gof) {
            const BivariateSample data = load(g_data).scaled(g_scale);
            const std::vector<double>& col = g_col == "x" ? data.x : data.y;
            json j;
            bgw::EwParams e(1.0, 1.0, 1.0);
            if (g_params.empty()) {
                const bgw::EwFit f = bgw::fit_ew(col);
                e = f.params;
                j["loglik"] = f.log_lik;
            } else {
                e = bgw::EwParams(g_params[0], g_params[1], g_params[2]);
            }
            const bgw::TestResult t = bgw::ks_test_ew(col, e);
            j["column"] = g_col;
            j["a"] = e.a();
            j["b"] = e.b();
            j["theta"] = e.theta();
            j["distance"] = t.statistic;
            j["p_value"] = t.p_value;
            print_json(j);
        } else if (*grid) {
            const auto p = to_params(r_params);
            emit(r_out, [&](std::ostream& os) { bgw::write_density_grid(os, p, r_spec); });
        }
    } catch (const bgw::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const bgw::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const bgw::DomainError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
