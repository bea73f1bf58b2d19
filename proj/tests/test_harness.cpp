#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "bgw/errors.hpp"
#include "bgw/harness.hpp"
#include "bgw/sampling.hpp"

using namespace bgw;

TEST_SUITE("harness") {
    TEST_CASE("key=value config") {
        const ExperimentConfig c = parse_experiment_config(
            "# comment\nparams = 1.5, 1, 2, 0.3\nsizes=10,20\nreps=7\nestimator=bayes\n"
            "prior=1,2,3,4,5,6,7,8\nc=-1\niters=500\nburnin=100\nseed=9\nstarts=2\n");
        CHECK(c.true_params == BgwParams(1.5, 1, 2, 0.3));
        CHECK(c.sample_sizes == std::vector<std::size_t>{10, 20});
        CHECK(c.replications == 7);
        CHECK(c.estimator == EstimatorKind::Bayes);
        CHECK(c.bayes.prior.delta == std::array<double, 4>{1, 3, 5, 7});
        CHECK(c.bayes.prior.zeta == std::array<double, 4>{2, 4, 6, 8});
        CHECK(c.bayes.c == -1.0);
        CHECK(c.bayes.iterations == 500);
        CHECK(c.bayes.burn_in == 100);
        CHECK(c.master_seed == 9);
        CHECK(c.starts == 2);
    }

    TEST_CASE("JSON config") {
        const ExperimentConfig c =
            parse_experiment_config(R"({"params": [2, 1.5, 1.5, 0.5], "sizes": [15], "reps": 3, "estimator": "mle"})");
        CHECK(c.sample_sizes == std::vector<std::size_t>{15});
        CHECK(c.replications == 3);
        CHECK(c.estimator == EstimatorKind::Mle);
    }

    TEST_CASE("config errors") {
        CHECK_THROWS_AS(parse_experiment_config("bogus=1"), DataError);
        CHECK_THROWS_AS(parse_experiment_config("reps"), DataError);
        CHECK_THROWS_AS(parse_experiment_config("sizes=3"), DomainError);
        CHECK_THROWS_AS(parse_experiment_config("params=1,1,1,2"), DomainError);
        CHECK_THROWS_AS(parse_experiment_config("{not json"), DataError);
    }

    TEST_CASE("results do not depend on the worker count") {
        ExperimentConfig c;
        c.sample_sizes = {10, 25};
        c.replications = 12;
        c.starts = 2;
        c.threads = 1;
        const auto r1 = run_experiment(c);
        c.threads = 3;
        const auto r3 = run_experiment(c);
        REQUIRE(r1.size() == 2);
        for (std::size_t i = 0; i < r1.size(); ++i) {
            CHECK(r1[i].bias == r3[i].bias);
            CHECK(r1[i].mse == r3[i].mse);
            CHECK(r1[i].used + r1[i].failed == 12);
            for (int k = 0; k < 4; ++k) CHECK(r1[i].mse[k] >= r1[i].bias[k] * r1[i].bias[k] - 1e-12);
        }
        std::ostringstream os;
        write_bias_mse_csv(os, r1);
        CHECK(os.str().rfind("n,bias_a,bias_b1,bias_b2,bias_theta,mse_a,mse_b1,mse_b2,mse_theta,used,failed\n10,", 0) == 0);
    }

    TEST_CASE("Bayes estimator path") {
        ExperimentConfig c;
        c.sample_sizes = {20};
        c.replications = 3;
        c.estimator = EstimatorKind::Bayes;
        c.bayes.iterations = 400;
        c.bayes.burn_in = 100;
        const auto rows = run_experiment(c);
        CHECK(rows[0].used == 3);
    }

    TEST_CASE("BGW_THREADS caps the workers") {
        setenv("BGW_THREADS", "2", 1);
        CHECK(default_workers() == 2);
        unsetenv("BGW_THREADS");
        CHECK(default_workers() >= 1);
    }

    TEST_CASE("real-data pipeline report layout") {
        Rng rng(3);
        const BivariateSample d = sample_n({2, 1.5, 1.5, 0.5}, 60, rng);
        PipelineOptions o;
        o.scale = 1.0;
        const nlohmann::json r = real_data_pipeline(d, o);
        for (const char* k : {"descriptive", "dependence", "marginals", "fits", "lrt"}) CHECK(r.contains(k));
        CHECK(r["fits"]["bge"]["a"].get<double>() == 1.0);
        CHECK(r["fits"]["bgr"]["a"].get<double>() == 2.0);
        CHECK(r["lrt"]["bge_vs_bgw"]["statistic"].get<double>() >= 0.0);
        CHECK(r["marginals"]["x"]["ks_reference"]["distance"].get<double>() > 0.0);
        BivariateSample bad = d;
        bad.x[3] = 0.0;
        CHECK_THROWS_AS(real_data_pipeline(bad, o), DataError);
    }
}
