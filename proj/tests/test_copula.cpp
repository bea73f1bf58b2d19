#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "bgw/copula.hpp"
#include "bgw/distribution.hpp"
#include "bgw/errors.hpp"
#include "bgw/rank_stats.hpp"
#include "bgw/sampling.hpp"
#include "oracles.hpp"

using namespace bgw;

namespace {

double rho_quadrature(double th) {
    return 12.0 * oracle::integrate2_ts([&](double s, double t) { return copula_cdf(th, s, t); }, 0, 1, 0, 1, 1e-10) -
           3.0;
}

}  // namespace

TEST_SUITE("copula") {
    TEST_CASE("boundary identities") {
        for (double th : {0.1, 0.5, 0.9, 1.0}) {
            for (double s = 0.0; s <= 1.0; s += 0.125) {
                CHECK(copula_cdf(th, s, 0.0) == 0.0);
                CHECK(copula_cdf(th, 0.0, s) == 0.0);
                CHECK(copula_cdf(th, s, 1.0) == s);
                CHECK(copula_cdf(th, 1.0, s) == s);
            }
        }
        CHECK(copula_cdf(0.5, 0.3, 1.0) == 0.3);
        for (double s = 0.05; s < 1; s += 0.1)
            for (double t = 0.05; t < 1; t += 0.1) CHECK(copula_cdf(1.0, s, t) == s * t);
        CHECK_THROWS_AS(copula_cdf(0.5, 1.2, 0.3), DomainError);
        CHECK_THROWS_AS(copula_cdf(0.0, 0.2, 0.3), DomainError);
    }

    TEST_CASE("copula is the joint law of the probability transforms") {
        const BgwParams p{1.3, 0.7, 1.9, 0.5};
        for (double x : {0.4, 1.0, 1.7}) {
            for (double y : {0.3, 0.8}) {
                const double s = marginal_cdf(marginal(p, Margin::X), x);
                const double t = marginal_cdf(marginal(p, Margin::Y), y);
                CHECK(std::abs(copula_cdf(0.5, s, t) - cdf(p, x, y)) < 1e-14);
            }
        }
    }

    TEST_CASE("empirical copula of sampled pairs") {
        const BgwParams p{1, 1, 1, 0.5};
        Rng rng(21);
        std::size_t hits = 0;
        const int n = 1000000;
        for (int i = 0; i < n; ++i) {
            const auto [x, y] = sample_pair(p, rng);
            hits += marginal_cdf(marginal(p, Margin::X), x) <= 0.4 && marginal_cdf(marginal(p, Margin::Y), y) <= 0.7;
        }
        CHECK(std::abs(static_cast<double>(hits) / n - copula_cdf(0.5, 0.4, 0.7)) < 0.003);
    }

    TEST_CASE("2-increasing and Frechet bounds") {
        for (double th : {0.05, 0.3, 0.7}) {
            const int m = 30;
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    const double s1 = double(i) / m, s2 = double(i + 1) / m, t1 = double(j) / m, t2 = double(j + 1) / m;
                    const double vol =
                        copula_cdf(th, s2, t2) - copula_cdf(th, s2, t1) - copula_cdf(th, s1, t2) + copula_cdf(th, s1, t1);
                    CHECK(vol >= -1e-15);
                    const double c = copula_cdf(th, s2, t2);
                    CHECK(c <= std::min(s2, t2) + 1e-15);
                    CHECK(c >= std::max(s2 + t2 - 1.0, 0.0) - 1e-15);
                }
            }
        }
    }

    TEST_CASE("partial derivatives") {
        const double h = 1e-6;
        for (double th : {0.3, 0.8}) {
            for (double s : {0.2, 0.6}) {
                for (double t : {0.1, 0.75}) {
                    const auto [cs, ct] = copula_partials(th, s, t);
                    CHECK(std::abs(cs - (copula_cdf(th, s + h, t) - copula_cdf(th, s - h, t)) / (2 * h)) < 1e-7);
                    CHECK(std::abs(ct - (copula_cdf(th, s, t + h) - copula_cdf(th, s, t - h)) / (2 * h)) < 1e-7);
                }
            }
        }
    }

    TEST_CASE("measures vanish at independence") {
        CHECK(std::abs(spearman_rho(1.0)) < 1e-10);
        CHECK(std::abs(footrule_phi(1.0)) < 1e-10);
        CHECK(std::abs(blest_B(1.0)) < 1e-10);
        CHECK(std::abs(regression_dependence_r(1.0)) < 1e-10);
        // the series themselves also collapse, without the short-circuit
        const double th = 1.0 - 1e-12;
        CHECK(std::abs(spearman_rho(th)) < 1e-8);
        CHECK(std::abs(footrule_phi(th)) < 1e-8);
        CHECK(std::abs(blest_B(th)) < 1e-8);
        CHECK(std::abs(regression_dependence_r(th)) < 1e-8);
    }

    TEST_CASE("series against quadrature oracles") {
        for (double th : {0.5, 0.25, 0.8}) {
            CHECK_MESSAGE(std::abs(spearman_rho(th) - rho_quadrature(th)) < 1e-4, "theta=" << th);
            // phi = 6 int C(t,t) dt - 2
            const double phi = 6.0 * oracle::integrate1([&](double t) { return copula_cdf(th, t, t); }, 0, 1) - 2.0;
            CHECK_MESSAGE(std::abs(footrule_phi(th) - phi) < 1e-6, "theta=" << th);
            // B = 24 int int (1 - s) C(s, t) - 2
            const double b = 24.0 * oracle::integrate2_ts([&](double s, double t) { return (1 - s) * copula_cdf(th, s, t); },
                                                          0, 1, 0, 1, 1e-10) -
                             2.0;
            CHECK_MESSAGE(std::abs(blest_B(th) - b) < 1e-4, "theta=" << th);
            // r = 6 int int C_s^2 - 2
            const double r = 6.0 * oracle::integrate2_ts(
                                       [&](double s, double t) {
                                           const double cs = copula_partials(th, s, t).first;
                                           return cs * cs;
                                       },
                                       0, 1, 0, 1, 1e-10) -
                             2.0;
            CHECK_MESSAGE(std::abs(regression_dependence_r(th) - r) < 1e-4, "theta=" << th);
        }
    }

    TEST_CASE("measures are nonnegative and within range") {
        for (double th = 0.05; th <= 1.0 + 1e-9; th += 0.05) {
            const double t = std::min(th, 1.0);
            const double r = regression_dependence_r(t);
            CHECK(r >= -1e-12);
            CHECK(r <= 1.0);
            CHECK(spearman_rho(t) >= -1e-12);
            CHECK(footrule_phi(t) >= -1e-12);
            CHECK(blest_B(t) >= -1e-12);
        }
    }

    TEST_CASE("published tau formula is a known issue") {
        // the closed form does not vanish at independence
        CHECK(kendall_tau_formula(1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-13));
        CHECK(kendall_tau_numeric(1.0) == 0.0);
        CHECK(std::abs(kendall_tau_numeric(1.0 - 1e-9)) < 1e-6);
    }

    TEST_CASE("numeric tau against sampled pairs, and rho > tau") {
        const BgwParams p{1, 1, 1, 0.5};
        Rng rng(4);
        const BivariateSample d = sample_n(p, 200000, rng);
        CHECK(std::abs(kendall(d.x, d.y) - kendall_tau_numeric(0.5)) < 0.005);
        for (double th : {0.1, 0.4, 0.7, 0.95}) CHECK(spearman_rho(th) > kendall_tau_numeric(th));
    }

    TEST_CASE("tail dependence") {
        CHECK(tail_dependence(1.0) == std::pair<double, double>{0.0, 0.0});
        CHECK(tail_dependence(0.5).first == 2.0 - std::sqrt(2.0));
        CHECK(tail_dependence(0.5).second == 0.0);
        const double t = 1e-3;
        CHECK(std::abs(copula_cdf(0.3, t, t) / t - tail_dependence(0.3).first) < 0.01);
        // upper tail ratio (1 - 2t + C(t,t)) / (1 - t) goes to 0
        const double u = 1.0 - 1e-6;
        CHECK((1 - 2 * u + copula_cdf(0.3, u, u)) / (1 - u) < 1e-3);
    }

    TEST_CASE("dependence sweep csv") {
        const auto rows = dependence_sweep(4);
        REQUIRE(rows.size() == 4);
        CHECK(rows.back().theta == 1.0);
        CHECK(rows.back().rho == 0.0);
        std::ostringstream os;
        write_dependence_csv(os, rows);
        CHECK(os.str().rfind("theta,rho,tau_formula,tau_numeric,phi,blest,r\n", 0) == 0);
    }
}
