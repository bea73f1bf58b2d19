#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bgw/distribution.hpp"
#include "bgw/mle.hpp"
#include "bgw/moments.hpp"
#include "bgw/rank_stats.hpp"
#include "bgw/sampling.hpp"
#include "oracles.hpp"

#include <boost/math/special_functions/digamma.hpp>

using namespace bgw;

TEST_SUITE("moments") {
    TEST_CASE("product moment closed cases") {
        CHECK(product_moment({1, 2.0, 5.0, 1.0}, 1, 1) == doctest::Approx(0.1).epsilon(1e-14));
        // a = 2 form: (pi/4) sum C(theta,j)(-1)^(j+1) / (sqrt(b1 b2) j), and the sum is the
        // harmonic number H_theta = psi(theta + 1) + gamma
        const double th = 0.6, b1 = 1.3, b2 = 0.4;
        const double h = boost::math::digamma(th + 1.0) + std::numbers::egamma;
        const double want = std::numbers::pi / 4.0 * h / std::sqrt(b1 * b2);
        CHECK(oracle::rel_err(product_moment({2, b1, b2, th}, 1, 1), want) < 1e-8);
    }

    TEST_CASE("a = 1 specialization") {
        const double th = 0.3, b1 = 0.9, b2 = 2.2;
        // E(XY) = 1/(b1 b2) sum C(theta,j)(-1)^(j+1) / j^2; the tail beyond 1e6 terms is ~1e-8 relative
        double s = 0.0, c = 1.0;
        for (int j = 1; j <= 1000000; ++j) {
            c *= (th - (j - 1)) / j;
            s += ((j % 2) ? 1.0 : -1.0) * c / (static_cast<double>(j) * j);
        }
        const double got = product_moment({1, b1, b2, th}, 1, 1);
        CHECK(oracle::rel_err(got, s / (b1 * b2)) < 1e-7);
    }

    TEST_CASE("EW moments") {
        CHECK(ew_moment({1, 1, 1}, 1) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(ew_moment({2, 1, 1}, 2) == doctest::Approx(1.0).epsilon(1e-14));
        for (const EwParams e : {EwParams(1, 1, 0.5), EwParams(2.5, 0.7, 0.3), EwParams(0.8, 2.0, 0.9)}) {
            for (int r : {1, 2}) {
                boost::math::quadrature::tanh_sinh<double> ts;
                const double q = ts.integrate([&](double t) { return std::pow(t, r) * marginal_pdf(e, t); }, 0.0,
                                              std::numeric_limits<double>::infinity(), 1e-13);
                CHECK_MESSAGE(oracle::rel_err(ew_moment(e, r), q) < 1e-8, "a=" << e.a() << " r=" << r);
            }
        }
    }

    TEST_CASE("product moment against a 2-D quadrature") {
        const BgwParams p{1.5, 0.8, 1.1, 0.45};
        const double q = oracle::integrate2_ts([&](double x, double y) { return x * y * pdf(p, x, y); }, 0, 25, 0, 25, 1e-9);
        CHECK(oracle::rel_err(product_moment(p, 1, 1), q) < 1e-5);
    }

    TEST_CASE("moments against the sampler") {
        const BgwParams p{2, 1, 1, 0.5};
        Rng rng(3);
        const BivariateSample d = sample_n(p, 1000000, rng);
        double s = 0, s2 = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double v = d.x[i] * d.y[i];
            s += v;
            s2 += v * v;
        }
        const double n = static_cast<double>(d.size());
        const double se = std::sqrt((s2 / n - (s / n) * (s / n)) / n);
        CHECK(std::abs(s / n - product_moment(p, 1, 1)) < 3 * se);
    }

    TEST_CASE("correlation") {
        CHECK(correlation({1.7, 1, 3, 1.0}) == 0.0);
        const BgwParams p{1, 1, 1, 0.5};
        Rng rng(5);
        const BivariateSample d = sample_n(p, 1000000, rng);
        CHECK(std::abs(pearson(d.x, d.y) - correlation(p)) < 0.01);
        const double r1 = correlation({1.6, 0.5, 0.8, 0.4});
        const double r2 = correlation({1.6, 0.5 * 7.3, 0.8 * 7.3, 0.4});
        CHECK(std::abs(r1 - r2) < 1e-10);
        for (double th : {0.1, 0.3, 0.7, 0.95}) {
            const double r = correlation({1.2, 1, 1, th});
            CHECK(r >= 0.0);
            CHECK(r < 1.0);
        }
    }

    TEST_CASE("covariance is nonnegative") {
        for (double th : {0.2, 0.5, 0.8}) {
            const BgwParams p{1.3, 0.6, 1.7, th};
            CHECK(product_moment(p, 1, 1) >=
                  ew_moment(marginal(p, Margin::X), 1) * ew_moment(marginal(p, Margin::Y), 1));
        }
    }

    TEST_CASE("min law and P(X < Y)") {
        CHECK(min_law({2, 3, 5, 0.7}) == EwParams(2, 8, 0.7));
        CHECK(prob_x_less_y({1.4, 2, 2, 0.3}) == 0.5);
        const BgwParams p{1, 1, 2, 0.5};
        Rng rng(9);
        const BivariateSample d = sample_n(p, 1000000, rng);
        std::size_t less = 0;
        std::vector<double> mins(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            less += d.x[i] < d.y[i];
            mins[i] = std::min(d.x[i], d.y[i]);
        }
        const double n = static_cast<double>(d.size());
        const double pr = prob_x_less_y(p);
        // the racing exponentials argument gives b1/(b1+b2)
        CHECK(pr == doctest::Approx(1.0 / 3.0));
        CHECK(std::abs(less / n - pr) < 3 * std::sqrt(pr * (1 - pr) / n));
        const std::vector<double> head(mins.begin(), mins.begin() + 100000);
        CHECK(ks_test_ew(head, min_law(p)).p_value > 0.01);
    }
}
