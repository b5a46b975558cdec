#pragma once

// Small statistics kit: moments, Wilson score intervals for tail
// probabilities, and least-squares lines (through the origin or affine) with
// the usual R^2 against the mean.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gibbslab/errors.hpp"

namespace gibbslab {

inline double sample_mean(const std::vector<double>& v) {
    if (v.empty()) throw invalid_input("sample_mean: empty data");
    long double acc = 0.0L;
    for (double x : v) acc += x;
    return static_cast<double>(acc / static_cast<long double>(v.size()));
}

// Unbiased (n-1 denominator) sample variance.
inline double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) throw invalid_input("sample_variance: need at least 2 points");
    long double mean = sample_mean(v);
    long double acc = 0.0L;
    for (double x : v) {
        long double d = static_cast<long double>(x) - mean;
        acc += d * d;
    }
    return static_cast<double>(acc / static_cast<long double>(v.size() - 1));
}

inline double sample_median(std::vector<double> v) {
    if (v.empty()) throw invalid_input("sample_median: empty data");
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval for a binomial proportion; well-behaved at p_hat = 0
// and 1, unlike the Wald interval.
inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                      double z = 1.959963984540054) {
    if (trials == 0) throw invalid_input("wilson_interval: zero trials");
    if (successes > trials) throw invalid_input("wilson_interval: successes exceed trials");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    WilsonInterval w;
    w.low = center - half;
    w.high = center + half;
    if (w.low < 0.0) w.low = 0.0;
    if (w.high > 1.0) w.high = 1.0;
    return w;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least squares of y against x; through the origin when with_intercept is
// false.  R^2 = 1 - SS_res / SS_tot with SS_tot about the mean of y (can be
// negative for a bad origin-constrained fit; that is informative, keep it).
inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y,
                               bool with_intercept) {
    if (x.size() != y.size()) throw invalid_input("least_squares: size mismatch");
    std::size_t n = x.size();
    if (n < 2) throw invalid_input("least_squares: need at least 2 points");
    long double sx = 0.0L, sy = 0.0L, sxx = 0.0L, sxy = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    LinearFit fit;
    long double nn = static_cast<long double>(n);
    if (with_intercept) {
        long double det = nn * sxx - sx * sx;
        if (!(det > 0.0L)) throw invalid_input("least_squares: degenerate x values");
        fit.slope = static_cast<double>((nn * sxy - sx * sy) / det);
        fit.intercept = static_cast<double>((sxx * sy - sx * sxy) / det);
    } else {
        if (!(sxx > 0.0L)) throw invalid_input("least_squares: degenerate x values");
        fit.slope = static_cast<double>(sxy / sxx);
        fit.intercept = 0.0;
    }
    long double mean_y = sy / nn;
    long double ss_res = 0.0L, ss_tot = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double r = y[i] - (fit.intercept + fit.slope * x[i]);
        long double d = y[i] - mean_y;
        ss_res += r * r;
        ss_tot += d * d;
    }
    fit.r_squared = ss_tot > 0.0L ? static_cast<double>(1.0L - ss_res / ss_tot) : 1.0;
    return fit;
}

} // namespace gibbslab
