// Shared statistics helpers: confidence intervals, two-sample KS,
// quantiles, least squares, bootstrap.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rgl {

struct WilsonInterval {
    double p_hat;
    double lo;
    double hi;
};

// 95% by default (z = 1.96).
WilsonInterval wilson_interval(long successes, long n, double z = 1.959963984540054);

// max_x |F_a(x) - F_b(x)| over the pooled sample.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// max over samples of |F_hat - cdf|.
double ks_vs_cdf(std::vector<double> samples, const std::function<double(double)>& cdf);

// Linear interpolation quantile on a copy, q in [0,1].
double quantile(std::vector<double> v, double q);
inline double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

struct LinearFit {
    double slope;
    double intercept;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Percentile bootstrap CI for the slope of y ~ x.
struct SlopeCI {
    double slope;
    double lo;
    double hi;
};
SlopeCI bootstrap_slope_ci(const std::vector<double>& x, const std::vector<double>& y,
                           int resamples, std::uint64_t seed, double level = 0.95);

// P(X <= k) for X ~ Binomial(n, p); direct summation of the PMF.
double binomial_cdf(long k, long n, double p);

// Central interval [lo, hi] with two-sided tail mass <= alpha.
void binomial_central_interval(long n, double p, double alpha, long& lo, long& hi);

} // namespace rgl
