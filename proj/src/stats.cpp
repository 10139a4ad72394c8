#include "rgl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rgl/rng.hpp"

namespace rgl {

WilsonInterval wilson_interval(long successes, long n, double z) {
    if (n <= 0) throw std::invalid_argument("wilson_interval: n must be positive");
    const double p = double(successes) / double(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / double(n);
    const double center = (p + z2 / (2.0 * double(n))) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / double(n) + z2 / (4.0 * double(n) * double(n))) / denom;
    return WilsonInterval{p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) ++ia; else ++ib;
        double fa = double(ia) / double(a.size());
        double fb = double(ib) / double(b.size());
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

double ks_vs_cdf(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_vs_cdf: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::fabs(double(i + 1) / n - f));
        d = std::max(d, std::fabs(double(i) / n - f));
    }
    return d;
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
    std::sort(v.begin(), v.end());
    const double pos = q * double(v.size() - 1);
    const std::size_t lo = std::size_t(pos);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = pos - double(lo);
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares: need >= 2 paired points");
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("least_squares: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    return LinearFit{slope, (sy - slope * sx) / n};
}

SlopeCI bootstrap_slope_ci(const std::vector<double>& x, const std::vector<double>& y,
                           int resamples, std::uint64_t seed, double level) {
    const LinearFit fit = least_squares(x, y);
    RngStream rng(seed, 0xb007);
    std::vector<double> slopes;
    slopes.reserve(resamples);
    std::vector<double> rx(x.size()), ry(y.size());
    for (int r = 0; r < resamples; ++r) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t k = std::size_t(rng.next_below(x.size()));
            rx[i] = x[k];
            ry[i] = y[k];
        }
        // Degenerate resamples (all same abscissa) are skipped.
        bool distinct = false;
        for (std::size_t i = 1; i < rx.size(); ++i) distinct |= (rx[i] != rx[0]);
        if (!distinct) { --r; continue; }
        slopes.push_back(least_squares(rx, ry).slope);
    }
    const double alpha = 1.0 - level;
    return SlopeCI{fit.slope, quantile(slopes, alpha / 2), quantile(slopes, 1.0 - alpha / 2)};
}

double binomial_cdf(long k, long n, double p) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    // log-space PMF recurrence, summed directly.
    double cdf = 0.0;
    double logpmf = double(n) * std::log1p(-p); // P(X=0)
    for (long i = 0; i <= k; ++i) {
        cdf += std::exp(logpmf);
        logpmf += std::log(double(n - i)) - std::log(double(i + 1)) + std::log(p) - std::log1p(-p);
    }
    return std::min(1.0, cdf);
}

void binomial_central_interval(long n, double p, double alpha, long& lo, long& hi) {
    const double half = alpha / 2.0;
    lo = 0;
    while (lo < n && binomial_cdf(lo, n, p) < half) ++lo;
    hi = n;
    while (hi > 0 && 1.0 - binomial_cdf(hi - 1, n, p) < half) --hi;
}

} // namespace rgl
