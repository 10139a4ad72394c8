#include "rgl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rgl/runner.hpp"

namespace rgl {

double SpectralDecomposition::operator_norm() const {
    if (eigenvalues.size() == 0) return 0.0;
    return std::max(std::fabs(eigenvalues(0)), std::fabs(eigenvalues(eigenvalues.size() - 1)));
}

SpectralDecomposition eigh(const Eigen::MatrixXd& m, int max_n) {
    const int n = int(m.rows());
    if (n == 0 || m.cols() != n) throw std::invalid_argument("eigh: square input required");
    if (n > max_n) throw std::invalid_argument("eigh: n exceeds configured maximum");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("eigh: input not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: solver failed to converge");

    SpectralDecomposition s;
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = solver.eigenvectors();
    s.residual =
        (m * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal()).colwise().norm().maxCoeff();
    s.orthogonality_defect =
        (s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();

    const double scale = 1.0 + s.operator_norm();
    if (s.residual > kEighResidualTol * scale || s.orthogonality_defect > kEighResidualTol)
        throw std::runtime_error("eigh: accuracy contract violated, residual " +
                                 std::to_string(s.residual));
    return s;
}

SpectralDecomposition eigh(const MatrixInstance& m, int max_n) { return eigh(m.data, max_n); }

Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues_only: solver failed to converge");
    return solver.eigenvalues();
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues(); // descending
}

double operator_norm(const MatrixInstance& m) {
    Eigen::VectorXd ev = eigenvalues_only(m.data);
    return std::max(std::fabs(ev(0)), std::fabs(ev(ev.size() - 1)));
}

GapReport gaps_of_eigenvalues(const Eigen::VectorXd& ev, double tau_simple) {
    const int n = int(ev.size());
    if (n < 2) throw std::invalid_argument("gaps: need n >= 2");
    GapReport r;
    r.tau_simple = tau_simple;
    r.gaps.resize(n - 1);
    r.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) {
        r.gaps[i] = ev(i + 1) - ev(i);
        if (r.gaps[i] < r.min_gap) {
            r.min_gap = r.gaps[i];
            r.argmin = i;
        }
    }
    const double norm = std::max(std::fabs(ev(0)), std::fabs(ev(n - 1)));
    r.simple = r.min_gap > tau_simple * (1.0 + norm);
    return r;
}

GapReport gaps(const SpectralDecomposition& s, double tau_simple) {
    return gaps_of_eigenvalues(s.eigenvalues, tau_simple);
}

GapCurve gap_probability_curve(int n, double p, int index, const std::vector<double>& delta_grid,
                               int trials, std::uint64_t seed, int workers) {
    if (index < 1 || index > n - 1) throw std::invalid_argument("gap_probability_curve: bad index");
    if (trials < 1) throw std::invalid_argument("gap_probability_curve: trials must be positive");
    for (std::size_t k = 0; k + 1 < delta_grid.size(); ++k)
        if (delta_grid[k] >= delta_grid[k + 1] || delta_grid[k] <= 0.0)
            throw std::invalid_argument("gap_probability_curve: grid must be positive ascending");

    GapCurve curve;
    curve.raw_gaps = run_trials<double>(trials, workers, seed, [&](int t, RngStream rng) {
        (void)t;
        GraphSample g = sample_gnp(n, p, rng);
        Eigen::VectorXd ev = eigenvalues_only(laplacian(g).data);
        return ev(index) - ev(index - 1); // 1-based gap index
    });

    const double scale = 1.0 / std::sqrt(double(n));
    for (double d : delta_grid) {
        long hits = 0;
        for (double g : curve.raw_gaps)
            if (g <= d * scale) ++hits;
        WilsonInterval w = wilson_interval(hits, trials);
        curve.points.push_back(GapCurvePoint{d, w.p_hat, w.lo, w.hi, trials});
    }
    return curve;
}

ScalingResult scaling_fit(const std::vector<int>& n_list, const std::vector<double>& medians,
                          std::uint64_t seed) {
    if (n_list.size() < 3) throw std::invalid_argument("min_gap_scaling: need >= 3 sizes");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        lx.push_back(std::log(double(n_list[i])));
        ly.push_back(std::log(medians[i]));
    }
    LinearFit fit = least_squares(lx, ly);
    SlopeCI ci = bootstrap_slope_ci(lx, ly, 2000, seed);
    ScalingResult r;
    r.slope = fit.slope;
    r.intercept = fit.intercept;
    r.slope_ci_lo = ci.lo;
    r.slope_ci_hi = ci.hi;
    return r;
}

ScalingResult min_gap_scaling(const std::vector<int>& n_list, double p, int trials,
                              std::uint64_t seed, int workers) {
    if (n_list.size() < 3) throw std::invalid_argument("min_gap_scaling: need >= 3 sizes");
    std::vector<ScalingRow> rows;
    std::vector<double> medians;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        const int n = n_list[k];
        std::vector<double> mins =
            run_trials<double>(trials, workers, splitmix64(seed + k), [&](int t, RngStream rng) {
                (void)t;
                GraphSample g = sample_gnp(n, p, rng);
                Eigen::VectorXd ev = eigenvalues_only(laplacian(g).data);
                return gaps_of_eigenvalues(ev).min_gap;
            });
        rows.push_back(ScalingRow{n, median(mins), quantile(mins, 0.25), quantile(mins, 0.75)});
        medians.push_back(rows.back().median_min_gap);
    }
    ScalingResult r = scaling_fit(n_list, medians, seed);
    r.rows = rows;
    return r;
}

EsdHistogram esd_histogram(const std::vector<Eigen::VectorXd>& spectra, double normalization,
                           double lo, double hi, int bins) {
    if (normalization <= 0.0) throw std::invalid_argument("esd_histogram: normalization must be > 0");
    if (bins < 1 || hi <= lo) throw std::invalid_argument("esd_histogram: bad binning");
    EsdHistogram h;
    h.normalization = normalization;
    h.trials = int(spectra.size());
    h.bin_edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.bin_edges[b] = lo + (hi - lo) * double(b) / double(bins);
    h.counts.assign(bins, 0);
    for (const auto& ev : spectra) {
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            double x = ev(i) / normalization;
            int b = int(std::floor((x - lo) / (hi - lo) * double(bins)));
            if (b < 0) b = 0;           // clamp under/overflow into edge bins
            if (b >= bins) b = bins - 1;
            ++h.counts[b];
        }
    }
    return h;
}

} // namespace rgl
