#include "bgw/moments.hpp"

#include <cmath>

#include "bgw/distribution.hpp"
#include "bgw/errors.hpp"

namespace bgw {

double product_moment(const BgwParams& p, int r, int s, const SeriesControl& ctrl) {
    if (r < 1 || s < 1) throw DomainError("product_moment: r and s must be >= 1");
    const double a = p.a(), th = p.theta();
    const double ra = r / a, sa = s / a;
    const double lead = std::exp(log_gamma(1.0 + ra) + log_gamma(1.0 + sa)) /
                        (std::pow(p.b1(), ra) * std::pow(p.b2(), sa));
    if (th == 1.0) return lead;
    const double k = ra + sa;
    auto term = [&](std::size_t j) {
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        return sign * gen_binom(th, j) * std::pow(static_cast<double>(j), -k);
    };
    return lead * series_value(term, ctrl, 1, "product_moment");
}

double ew_moment(const EwParams& e, int r, const SeriesControl& ctrl) {
    if (r < 1) throw DomainError("ew_moment: r must be >= 1");
    const double a = e.a(), th = e.theta();
    const double ra = r / a;
    const double lead = std::exp(log_gamma(1.0 + ra)) / std::pow(e.b(), ra);
    if (th == 1.0) return lead;
    auto term = [&](std::size_t j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        return sign * gen_binom(th - 1.0, j) * std::pow(static_cast<double>(j + 1), -1.0 - ra);
    };
    return th * lead * series_value(term, ctrl, 0, "ew_moment");
}

double correlation(const BgwParams& p, const SeriesControl& ctrl) {
    if (p.theta() == 1.0) return 0.0;
    const EwParams ex = marginal(p, Margin::X), ey = marginal(p, Margin::Y);
    const double mx = ew_moment(ex, 1, ctrl), my = ew_moment(ey, 1, ctrl);
    const double vx = ew_moment(ex, 2, ctrl) - mx * mx;
    const double vy = ew_moment(ey, 2, ctrl) - my * my;
    return (product_moment(p, 1, 1, ctrl) - mx * my) / std::sqrt(vx * vy);
}

EwParams min_law(const BgwParams& p) { return {p.a(), p.b1() + p.b2(), p.theta()}; }

// X has rate b1, so the X draw wins the race with probability b1/(b1+b2).
double prob_x_less_y(const BgwParams& p) { return p.b1() / (p.b1() + p.b2()); }

}  // namespace bgw
