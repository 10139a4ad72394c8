#include "rgl/smallball.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rgl {

double AtomDistribution::variance() const {
    switch (kind) {
        case Kind::FairSign: return 1.0;
        case Kind::CenteredBernoulli: return normalize ? 1.0 : p * (1.0 - p);
        case Kind::Gaussian: return 1.0;
    }
    return 1.0;
}

double AtomDistribution::sample(RngStream& rng) const {
    switch (kind) {
        case Kind::FairSign:
            return rng.next_coin() ? 1.0 : -1.0;
        case Kind::CenteredBernoulli: {
            const double v = rng.next_bernoulli(p) ? 1.0 - p : -p;
            return normalize ? v / std::sqrt(p * (1.0 - p)) : v;
        }
        case Kind::Gaussian:
            return rng.next_gaussian();
    }
    return 0.0;
}

namespace {

// Exact sup over a of the mass of a width-2eps closed window, on sorted
// (value, weight) pairs. The maximizing window can anchor its left end on a
// support point.
template <class Value>
double max_window_mass(const std::vector<Value>& sorted_vals, const std::vector<double>& weights,
                       double eps, double total, double* center) {
    const std::size_t n = sorted_vals.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + (weights.empty() ? 1.0 : weights[i]);
    double best = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (j < i) j = i;
        while (j + 1 < n && double(sorted_vals[j + 1]) <= double(sorted_vals[i]) + 2.0 * eps) ++j;
        const double mass = cum[j + 1] - cum[i];
        if (mass > best) {
            best = mass;
            if (center) *center = 0.5 * (double(sorted_vals[i]) + double(sorted_vals[j]));
        }
    }
    return best / total;
}

struct Outcome {
    double sum;
    double weight;
};

// All 2^n atom assignments with their probabilities.
std::vector<Outcome> enumerate_outcomes(const Eigen::VectorXd& w, const AtomDistribution& dist) {
    const int n = int(w.size());
    if (n > 24) throw std::invalid_argument("levy_exact: n > 24");
    if (!dist.discrete()) throw std::invalid_argument("levy_exact: continuous atoms");

    double hi, lo, phi;
    if (dist.kind == AtomDistribution::Kind::FairSign) {
        hi = 1.0; lo = -1.0; phi = 0.5;
    } else {
        const double s = dist.normalize ? std::sqrt(dist.p * (1.0 - dist.p)) : 1.0;
        hi = (1.0 - dist.p) / s; lo = -dist.p / s; phi = dist.p;
    }

    std::vector<Outcome> out(std::size_t(1) << n);
    for (std::size_t mask = 0; mask < out.size(); ++mask) {
        double s = 0.0, pr = 1.0;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) { s += hi * w(i); pr *= phi; }
            else { s += lo * w(i); pr *= 1.0 - phi; }
        }
        out[mask] = {s, pr};
    }
    std::sort(out.begin(), out.end(), [](const Outcome& a, const Outcome& b) { return a.sum < b.sum; });
    return out;
}

} // namespace

SmallBallEstimate levy_exact(const Eigen::VectorXd& w, double eps, const AtomDistribution& dist) {
    if (eps < 0.0) throw std::invalid_argument("levy_exact: eps must be >= 0");
    std::vector<Outcome> out = enumerate_outcomes(w, dist);
    std::vector<double> vals(out.size()), wts(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) { vals[i] = out[i].sum; wts[i] = out[i].weight; }
    SmallBallEstimate e;
    e.epsilon = eps;
    e.samples = long(out.size());
    e.ci_half = 0.0;
    e.exact = true;
    e.rho = max_window_mass(vals, wts, eps, 1.0, &e.best_center);
    return e;
}

namespace {

constexpr long kChunk = 1 << 14;

// Deterministic chunked sampling of sums (and optionally coin totals).
void sample_sums(const Eigen::VectorXd& w, const AtomDistribution& dist, long N,
                 std::uint64_t seed, std::vector<double>& t_out, std::vector<double>* u_out) {
    t_out.resize(N);
    if (u_out) u_out->resize(N);
    const long chunks = (N + kChunk - 1) / kChunk;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long c = 0; c < chunks; ++c) {
        RngStream rng(seed, std::uint64_t(c) | 0x5B00000000000000ULL);
        const long lo = c * kChunk, hi = std::min(N, lo + kChunk);
        for (long s = lo; s < hi; ++s) {
            double t = 0.0, u = 0.0;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                const double xi = dist.sample(rng);
                t += xi * w(i);
                u += xi;
            }
            t_out[s] = t;
            if (u_out) (*u_out)[s] = u;
        }
    }
}

} // namespace

SmallBallEstimate levy_mc(const Eigen::VectorXd& w, double eps, const AtomDistribution& dist,
                          long N, std::uint64_t seed) {
    if (N < 10000) throw std::invalid_argument("levy_mc: N must be >= 1e4");
    std::vector<double> sums;
    sample_sums(w, dist, N, seed, sums, nullptr);
    std::sort(sums.begin(), sums.end());
    SmallBallEstimate e;
    e.epsilon = eps;
    e.samples = N;
    e.exact = false;
    e.rho = max_window_mass(sums, {}, eps, double(N), &e.best_center);
    const WilsonInterval ci = wilson_interval(long(e.rho * double(N) + 0.5), N);
    e.ci_half = 0.5 * (ci.hi - ci.lo);
    return e;
}

namespace {

double affine_best_at_shift(const std::vector<double>& t, const std::vector<double>& u,
                            double wbar, double r, double* center) {
    std::vector<double> vals(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) vals[i] = t[i] - wbar * u[i];
    std::sort(vals.begin(), vals.end());
    return max_window_mass(vals, {}, r, double(vals.size()), center);
}

} // namespace

SmallBallEstimate levy_affine(const Eigen::VectorXd& w, double r, const AtomDistribution& dist,
                              int shift_grid, long N, std::uint64_t seed) {
    if (N < 10000) throw std::invalid_argument("levy_affine: N must be >= 1e4");
    if (shift_grid < 2) throw std::invalid_argument("levy_affine: grid must have >= 2 points");
    std::vector<double> t, u;
    sample_sums(w, dist, N, seed, t, &u);

    const double lo = w.minCoeff(), hi = w.maxCoeff();
    std::vector<double> grid(shift_grid);
    for (int k = 0; k < shift_grid; ++k)
        grid[k] = lo + (hi - lo) * double(k) / double(shift_grid - 1);

    std::vector<double> rho(grid.size());
    std::vector<double> centers(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long k = 0; k < long(grid.size()); ++k)
        rho[k] = affine_best_at_shift(t, u, grid[k], r, &centers[k]);

    std::size_t arg = std::max_element(rho.begin(), rho.end()) - rho.begin();
    SmallBallEstimate e;
    e.epsilon = r;
    e.samples = N;
    e.exact = false;
    e.rho = rho[arg];
    e.best_shift = grid[arg];
    e.best_center = centers[arg];

    // One refinement pass around the argmax cell.
    const double cell = (hi - lo) / double(shift_grid - 1);
    const double rlo = std::max(lo, grid[arg] - cell), rhi = std::min(hi, grid[arg] + cell);
    for (int k = 0; k <= 32; ++k) {
        const double wb = rlo + (rhi - rlo) * double(k) / 32.0;
        double c = 0.0;
        const double rr = affine_best_at_shift(t, u, wb, r, &c);
        if (rr > e.rho) { e.rho = rr; e.best_shift = wb; e.best_center = c; }
    }
    const WilsonInterval ci = wilson_interval(long(e.rho * double(N) + 0.5), N);
    e.ci_half = 0.5 * (ci.hi - ci.lo);
    return e;
}

SmallBallEstimate levy_affine_exact(const Eigen::VectorXd& w, double r,
                                    const AtomDistribution& dist, int shift_grid) {
    std::vector<Outcome> base = enumerate_outcomes(w, dist);
    // Per-outcome coin totals, re-derived from the mask encoding.
    const int n = int(w.size());
    double hi_v, lo_v;
    if (dist.kind == AtomDistribution::Kind::FairSign) { hi_v = 1.0; lo_v = -1.0; }
    else {
        const double s = dist.normalize ? std::sqrt(dist.p * (1.0 - dist.p)) : 1.0;
        hi_v = (1.0 - dist.p) / s; lo_v = -dist.p / s;
    }
    const double lo = w.minCoeff(), hi = w.maxCoeff();
    SmallBallEstimate e;
    e.epsilon = r;
    e.samples = long(base.size());
    e.exact = true;
    e.rho = 0.0;

    std::vector<double> vals(base.size()), wts(base.size());
    for (int k = 0; k < shift_grid; ++k) {
        const double wb = lo + (hi - lo) * double(k) / double(shift_grid - 1);
        // Rebuild sums for the shifted weight vector.
        std::vector<Outcome> out(std::size_t(1) << n);
        for (std::size_t mask = 0; mask < out.size(); ++mask) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += (((mask >> i) & 1) ? hi_v : lo_v) * (w(i) - wb);
            out[mask].sum = s;
            out[mask].weight = base[mask].weight;
        }
        std::sort(out.begin(), out.end(),
                  [](const Outcome& a, const Outcome& b) { return a.sum < b.sum; });
        for (std::size_t i = 0; i < out.size(); ++i) { vals[i] = out[i].sum; wts[i] = out[i].weight; }
        double c = 0.0;
        const double rho = max_window_mass(vals, wts, r, 1.0, &c);
        if (rho > e.rho) { e.rho = rho; e.best_shift = wb; e.best_center = c; }
    }
    return e;
}

LcdBoundRecord lcd_smallball_compare(const Eigen::VectorXd& x, const LcdParams& params,
                                     double eps, const AtomDistribution& dist, long N,
                                     std::uint64_t seed, double c_fit) {
    const LcdResult cert = lcd_scan(x, params);
    LcdBoundRecord rec;
    rec.certificate = cert.theta; // Found: the LCD itself; LowerBound: certified level
    rec.epsilon = eps;
    if (eps < 1.0 / rec.certificate)
        throw std::invalid_argument("lcd_smallball_compare: eps below 1/LCD certificate");
    rec.rho = levy_mc(x / x.norm(), eps, dist, N, seed).rho;
    rec.bound = c_fit * eps / params.gamma + std::exp(-0.5 * params.kappa * params.kappa);
    rec.holds = rec.rho <= rec.bound;
    return rec;
}

TensorizationRecord tensorization_check(double K, double delta0, double delta, int n,
                                        const AtomDistribution& dist, long N, std::uint64_t seed,
                                        double C0) {
    if (delta < delta0) throw std::invalid_argument("tensorization_check: delta below delta0");
    long hits = 0;
    const long chunks = (N + kChunk - 1) / kChunk;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : hits)
#endif
    for (long c = 0; c < chunks; ++c) {
        RngStream rng(seed, std::uint64_t(c) | 0x7E00000000000000ULL);
        const long lo = c * kChunk, hi = std::min(N, lo + kChunk);
        for (long s = lo; s < hi; ++s) {
            double q = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = dist.sample(rng);
                q += x * x;
            }
            if (q < delta * delta * double(n)) ++hits;
        }
    }
    TensorizationRecord rec;
    rec.probability = double(hits) / double(N);
    rec.bound = std::pow(C0 * K * delta, double(n));
    const WilsonInterval ci = wilson_interval(hits, N);
    rec.ci_half = 0.5 * (ci.hi - ci.lo);
    return rec;
}

DistanceToSubspaceResult distance_to_subspace_stat(int n, int k, const AtomDistribution& dist,
                                                   const Eigen::VectorXd& u, int trials,
                                                   std::uint64_t seed,
                                                   const Eigen::MatrixXd* frame) {
    if (k < 0 || k > n) throw std::invalid_argument("distance_to_subspace_stat: bad dimension");
    Eigen::MatrixXd Q;
    if (frame) {
        Q = *frame;
        if (Q.rows() != n || Q.cols() != k)
            throw std::invalid_argument("distance_to_subspace_stat: frame shape mismatch");
    } else if (k > 0) {
        RngStream rng(seed, 0xF0A3E);
        Eigen::MatrixXd G(n, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) G(i, j) = rng.next_gaussian();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
        Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    }

    DistanceToSubspaceResult res;
    res.distances.resize(trials);
    for (int t = 0; t < trials; ++t) {
        RngStream rng(seed, std::uint64_t(t));
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = dist.sample(rng);
        Eigen::VectorXd proj = (k > 0) ? Eigen::VectorXd(Q * (Q.transpose() * v))
                                       : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
        res.distances[t] = (proj - u).norm();
    }
    res.median = median(res.distances);
    res.q05 = quantile(res.distances, 0.05);
    res.q95 = quantile(res.distances, 0.95);
    return res;
}

} // namespace rgl
