// Eigendecomposition with enforced accuracy contract, singular values,
// gap statistics, min-gap scaling, and pooled spectral histograms.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rgl/matrix.hpp"
#include "rgl/stats.hpp"

namespace rgl {

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // orthonormal columns
    double residual = 0.0;            // max_i ||M v_i - lambda_i v_i||_2
    double orthogonality_defect = 0.0; // ||V^T V - I||_max

    int n() const { return int(eigenvalues.size()); }
    double operator_norm() const;
};

inline constexpr double kEighResidualTol = 1e-10;
inline constexpr int kEighMaxN = 4096;

// Full decomposition; throws if the residual or orthogonality contract
// cannot be met. Deterministic for a fixed input.
SpectralDecomposition eigh(const MatrixInstance& m, int max_n = kEighMaxN);
SpectralDecomposition eigh(const Eigen::MatrixXd& m, int max_n = kEighMaxN);

// Ascending eigenvalues without accumulating eigenvectors (cheaper; used by
// the Monte Carlo curves). Agrees with eigh to 1e-12 relative.
Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& m);

// Descending singular values of a rectangular matrix.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

// max_i |lambda_i|.
double operator_norm(const MatrixInstance& m);

struct GapReport {
    std::vector<double> gaps; // lambda_{i+1} - lambda_i
    double min_gap = 0.0;
    int argmin = 0;           // 0-based gap index
    bool simple = false;
    double tau_simple = kEighResidualTol;
};

GapReport gaps(const SpectralDecomposition& s, double tau_simple = kEighResidualTol);
GapReport gaps_of_eigenvalues(const Eigen::VectorXd& ev, double tau_simple = kEighResidualTol);

struct GapCurvePoint {
    double delta;
    double p_hat;
    double ci_lo;
    double ci_hi;
    long trials;
};

struct GapCurve {
    std::vector<GapCurvePoint> points;
    std::vector<double> raw_gaps; // per-trial i-th gap, indexed by trial
};

// Empirical P(delta_i <= delta * n^{-1/2}) over Monte Carlo trials of L(G(n,p)).
// i is 1-based as in delta_i = lambda_{i+1} - lambda_i.
GapCurve gap_probability_curve(int n, double p, int index, const std::vector<double>& delta_grid,
                               int trials, std::uint64_t seed, int workers = 0);

struct ScalingRow {
    int n;
    double median_min_gap;
    double q25;
    double q75;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    double slope;
    double intercept;
    double slope_ci_lo;
    double slope_ci_hi;
};

ScalingResult min_gap_scaling(const std::vector<int>& n_list, double p, int trials,
                              std::uint64_t seed, int workers = 0);

// Regression-only entry point (synthetic medians; used by tests).
ScalingResult scaling_fit(const std::vector<int>& n_list, const std::vector<double>& medians,
                          std::uint64_t seed);

struct EsdHistogram {
    double normalization;
    std::vector<double> bin_edges; // size bins+1
    std::vector<long> counts;      // size bins
    int trials = 0;

    long total() const {
        long t = 0;
        for (long c : counts) t += c;
        return t;
    }
};

// Pools eigenvalue/normalization over all decompositions into fixed bins.
EsdHistogram esd_histogram(const std::vector<Eigen::VectorXd>& spectra, double normalization,
                           double lo, double hi, int bins);

} // namespace rgl
