#include "bgw/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bgw/errors.hpp"

namespace bgw {

namespace {

void require_pairs(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
    if (x.size() != y.size()) throw DataError("paired statistic: lengths differ");
    if (x.size() < min_n) throw DataError("paired statistic: too few observations");
}

}  // namespace

double quantile(std::span<const double> v, double prob) {
    if (v.empty()) throw DataError("quantile: empty data");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const double h = (s.size() - 1) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - lo) * (s[hi] - s[lo]);
}

Descriptive describe(std::span<const double> v) {
    if (v.size() < 2) throw DataError("describe: need at least 2 observations");
    const double n = static_cast<double>(v.size());
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double t : v) {
        const double d = t - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    Descriptive d{};
    d.min = *std::min_element(v.begin(), v.end());
    d.max = *std::max_element(v.begin(), v.end());
    d.q1 = quantile(v, 0.25);
    d.median = quantile(v, 0.5);
    d.q3 = quantile(v, 0.75);
    d.mean = m;
    d.sd = std::sqrt(m2 * n / (n - 1.0));
    d.skewness = m3 / std::pow(m2, 1.5);
    d.kurtosis = m4 / (m2 * m2);
    return d;
}

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("pearson: constant input");
    return sxy / std::sqrt(sxx * syy);
}

double spearman(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const auto rx = average_ranks(x), ry = average_ranks(y);
    return pearson(rx, ry);
}

namespace {

// sum over runs of equal values of t (t - 1) / 2; v must be sorted
template <class Eq>
double tied_pairs(std::size_t n, Eq eq) {
    double s = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && eq(i, j)) ++j;
        const double t = static_cast<double>(j - i);
        s += 0.5 * t * (t - 1.0);
        i = j;
    }
    return s;
}

// merge sort that counts exchanges
double sort_count_swaps(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0.0;
    const std::size_t mid = lo + (hi - lo) / 2;
    double swaps = sort_count_swaps(v, buf, lo, mid) + sort_count_swaps(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
            buf[k++] = v[i++];
        } else {
            swaps += static_cast<double>(mid - i);
            buf[k++] = v[j++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
    return swaps;
}

}  // namespace

// Knight's O(n log n) algorithm
double kendall(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = x[idx[i]];
        ys[i] = y[idx[i]];
    }
    const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double n1 = tied_pairs(n, [&](std::size_t i, std::size_t j) { return xs[i] == xs[j]; });
    const double n3 =
        tied_pairs(n, [&](std::size_t i, std::size_t j) { return xs[i] == xs[j] && ys[i] == ys[j]; });
    std::vector<double> buf(n);
    const double swaps = sort_count_swaps(ys, buf, 0, n);
    const double n2 = tied_pairs(n, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });
    const double denom = std::sqrt((n0 - n1) * (n0 - n2));
    if (denom == 0.0) throw DataError("kendall: constant input");
    return (n0 - n1 - n2 + n3 - 2.0 * swaps) / denom;
}

double footrule(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const auto r = average_ranks(x), s = average_ranks(y);
    const double n = static_cast<double>(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) sum += std::abs(r[i] - s[i]);
    return 1.0 - 3.0 * sum / (n * n - 1.0);
}

double blest(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y, 2);
    const auto r = average_ranks(x), s = average_ranks(y);
    const double n = static_cast<double>(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) sum += (n + 1.0 - r[i]) * (n + 1.0 - r[i]) * s[i];
    return (2.0 * n + 1.0) / (n - 1.0) - 12.0 / (n * (n - 1.0) * (n + 1.0) * (n + 1.0)) * sum;
}

}  // namespace bgw
