#include "rgl/deloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rgl {

Eigen::VectorXd canonicalize(Eigen::VectorXd v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) != 0.0) {
            if (v(i) < 0.0) v = -v;
            break;
        }
    }
    return v;
}

AffineResidual affine_residual(const Eigen::VectorXd& v, const std::vector<int>& index_set) {
    if (index_set.empty()) throw std::invalid_argument("affine_residual: empty index set");
    double sum = 0.0, sumsq = 0.0;
    for (int i : index_set) {
        sum += v(i);
        sumsq += v(i) * v(i);
    }
    const double m = sum / double(index_set.size());
    const double val2 = sumsq - double(index_set.size()) * m * m;
    return AffineResidual{std::sqrt(std::max(0.0, val2)), m};
}

AffineWindowStat affine_window_stat(const Eigen::VectorXd& v, int n0) {
    const int n = int(v.size());
    if (n0 < 1 || n0 > n) throw std::invalid_argument("affine_window_stat: bad window size");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v(a) < v(b); });

    std::vector<double> c1(n + 1, 0.0), c2(n + 1, 0.0);
    for (int k = 0; k < n; ++k) {
        const double x = v(order[k]);
        c1[k + 1] = c1[k] + x;
        c2[k + 1] = c2[k] + x * x;
    }

    double best = std::numeric_limits<double>::infinity();
    int best_at = 0;
    for (int a = 0; a + n0 <= n; ++a) {
        const double s = c1[a + n0] - c1[a];
        const double q = c2[a + n0] - c2[a];
        const double val2 = q - s * s / double(n0);
        if (val2 < best) {
            best = val2;
            best_at = a;
        }
    }

    AffineWindowStat out;
    out.value = std::sqrt(std::max(0.0, best));
    out.witness.assign(order.begin() + best_at, order.begin() + best_at + n0);
    std::sort(out.witness.begin(), out.witness.end());
    double s = 0.0;
    for (int i : out.witness) s += v(i);
    out.shift = s / double(n0);
    return out;
}

std::vector<int> spread_set(const Eigen::VectorXd& x, const SpreadParams& params) {
    if (!(0.0 < params.c1 && params.c1 <= params.c0 && params.c0 < 1.0 && params.C > 1.0))
        throw std::invalid_argument("spread_set: require 0 < c1 <= c0 < 1 < C");
    if (x.norm() == 0.0) throw std::invalid_argument("spread_set: zero vector");
    const double sqrt_n = std::sqrt(double(x.size()));
    const double lo = std::sqrt(params.c1 / params.c0) / sqrt_n;
    const double hi = params.C / sqrt_n;
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::fabs(x(i));
        if (a >= lo && a <= hi) idx.push_back(int(i));
    }
    return idx;
}

Eigen::VectorXd sup_norm_profile(const SpectralDecomposition& s) {
    return s.eigenvectors.cwiseAbs().colwise().maxCoeff();
}

int small_coordinate_count(const Eigen::VectorXd& v, double B) {
    if (B <= 0.0) throw std::invalid_argument("small_coordinate_count: B must be positive");
    const double thr = std::pow(double(v.size()), -B);
    int count = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::fabs(v(i)) < thr) ++count;
    return count;
}

LevelSetParams level_set_params(int n, double lambda_n, double A0, double C) {
    const double ln = std::log(double(n));
    LevelSetParams p;
    p.lambda_n = lambda_n;
    p.delta_n = std::pow(ln, -A0 / lambda_n);
    p.t0 = std::pow(ln, 64.0);
    p.alpha_n = std::pow(ln, -2.0);
    p.grid_denominator = std::ceil(std::pow(double(n), C + 0.5));
    return p;
}

double best_kept_residual(const Eigen::VectorXd& v, int begin, int end, double shift_over_sqrt_n,
                          int drop_budget, std::vector<int>* kept) {
    const int len = end - begin;
    std::vector<std::pair<double, int>> dev(len);
    for (int k = 0; k < len; ++k) {
        const double d = v(begin + k) - shift_over_sqrt_n;
        dev[k] = {d * d, begin + k};
    }
    std::sort(dev.begin(), dev.end());
    const int keep = std::max(0, len - drop_budget);
    double total = 0.0;
    for (int k = 0; k < keep; ++k) total += dev[k].first;
    if (kept) {
        kept->clear();
        for (int k = 0; k < keep; ++k) kept->push_back(dev[k].second);
        std::sort(kept->begin(), kept->end());
    }
    return std::sqrt(total);
}

namespace {

// Best grid shift for one interval: minimize over sorted-contiguous kept sets
// of size len-drop; the unconstrained optimum centers a/sqrt(n) on the window
// mean, then a is snapped to Z/D and clamped to |a| <= sqrt(n).
struct IntervalFit {
    double shift;
    double residual;
    std::vector<int> kept;
};

IntervalFit fit_interval(const Eigen::VectorXd& v, int begin, int end, int drop_budget, double D,
                         double sqrt_n) {
    const int len = end - begin;
    const int keep = std::max(1, len - drop_budget);
    std::vector<double> s(v.data() + begin, v.data() + end);
    std::sort(s.begin(), s.end());
    std::vector<double> c1(len + 1, 0.0), c2(len + 1, 0.0);
    for (int k = 0; k < len; ++k) {
        c1[k + 1] = c1[k] + s[k];
        c2[k + 1] = c2[k] + s[k] * s[k];
    }
    double best_mean = 0.0, best = std::numeric_limits<double>::infinity();
    for (int a = 0; a + keep <= len; ++a) {
        const double sm = c1[a + keep] - c1[a];
        const double qq = c2[a + keep] - c2[a];
        const double val2 = qq - sm * sm / double(keep);
        if (val2 < best) {
            best = val2;
            best_mean = sm / double(keep);
        }
    }
    double a_grid = std::round(best_mean * sqrt_n * D) / D;
    a_grid = std::clamp(a_grid, -sqrt_n, sqrt_n);

    IntervalFit fit;
    fit.shift = a_grid;
    fit.residual = best_kept_residual(v, begin, end, a_grid / sqrt_n, drop_budget, &fit.kept);
    return fit;
}

} // namespace

LevelSetDecomposition level_set_decomposition(const Eigen::VectorXd& v,
                                              const LevelSetParams& params) {
    const int n = int(v.size());
    if (n < 8) throw std::invalid_argument("level_set_decomposition: n too small");
    if (!(params.lambda_n > 0.0 && params.lambda_n < 1.0))
        throw std::invalid_argument("level_set_decomposition: lambda_n outside (0,1)");
    if (!(params.t0 > 1.0)) throw std::invalid_argument("level_set_decomposition: t0 must be > 1");
    // Reject delta_n * t0^(8/lambda_n) >= 1 (checked in log space; delta_n may underflow to 0).
    if (params.delta_n > 0.0 &&
        std::log(params.delta_n) + (8.0 / params.lambda_n) * std::log(params.t0) >= 0.0)
        throw std::invalid_argument(
            "level_set_decomposition: delta_n * t0^(8/lambda_n) >= 1, approximation meaningless");

    // Interval layout: J_0 = first ceil(lambda_n n) indices, then blocks of
    // length floor(lambda_n n / 4), last block absorbing the remainder.
    const int head = std::min(n, int(std::ceil(params.lambda_n * double(n))));
    const int k = std::max(1, int(std::floor(params.lambda_n * double(n) / 4.0)));
    std::vector<std::pair<int, int>> intervals;
    intervals.push_back({0, head});
    int pos = head;
    while (pos < n) {
        int e = pos + k;
        if (n - pos < 2 * k) e = n; // short tail joins the last block
        intervals.push_back({pos, e});
        pos = e;
    }

    const int drop_budget = int(std::floor(params.alpha_n * params.lambda_n * double(n)));
    const double sqrt_n = std::sqrt(double(n));

    LevelSetDecomposition out;
    out.params = params;
    std::vector<bool> selected(intervals.size(), false);
    int round = 0;
    while (true) {
        const double tol =
            params.delta_n == 0.0 ? 0.0 : params.delta_n * std::pow(params.t0, double(round));
        bool found = false;
        for (std::size_t i = 0; i < intervals.size() && !found; ++i) {
            if (selected[i]) continue;
            IntervalFit fit = fit_interval(v, intervals[i].first, intervals[i].second, drop_budget,
                                           params.grid_denominator, sqrt_n);
            if (fit.residual <= tol) {
                selected[i] = true;
                out.sparse_intervals.push_back(SparseInterval{intervals[i].first,
                                                              intervals[i].second, fit.shift,
                                                              std::move(fit.kept), round,
                                                              fit.residual});
                found = true;
            }
        }
        if (!found) break;
        ++round;
        if (round > int(intervals.size())) break; // every interval selected
    }
    out.i0 = round;
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (!selected[i]) out.mixed_intervals.push_back(intervals[i]);
    return out;
}

Eigen::VectorXd round_to_grid(const Eigen::VectorXd& v, double D) {
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = std::round(v(i) * D) / D;
    return out;
}

ApproxEigvecRecord approx_eigvec_check(const MatrixInstance& m, const Eigen::VectorXd& v,
                                       double lambda0, double D, double C) {
    const double n = double(v.size());
    ApproxEigvecRecord r;
    r.residual = (m.data * v - lambda0 * v).norm();
    r.sum = std::fabs(v.sum());
    r.norm_dev = std::fabs(v.norm() - 1.0);
    r.grid_denominator = D;
    r.residual_ok = r.residual <= std::sqrt(n) * std::log(n) * std::pow(n, -C);
    r.sum_ok = r.sum <= std::pow(n, 0.5 - C);
    r.norm_ok = r.norm_dev <= std::pow(n, -C);
    r.pass = r.residual_ok && r.sum_ok && r.norm_ok;
    return r;
}

} // namespace rgl
