// Eigenvector delocalization diagnostics: affine no-gaps statistics over
// index windows, spread sets, sup-norm profiles, small-coordinate counts,
// the greedy level-set decomposition, and the approximate-eigenvector check.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rgl/spectra.hpp"

namespace rgl {

// Flip sign so the first nonzero coordinate is positive.
Eigen::VectorXd canonicalize(Eigen::VectorXd v);

struct AffineResidual {
    double value;
    double shift; // minimizing a (the mean of v over I)
};

// min over real a of ||v_I - a 1_I||_2; closed form at a = mean(v_I).
AffineResidual affine_residual(const Eigen::VectorXd& v, const std::vector<int>& index_set);

struct AffineWindowStat {
    double value;
    std::vector<int> witness; // indices of the minimizing set, size n0
    double shift;
};

// Exact min of affine_residual over all index sets of size n0: sort v and
// scan contiguous windows in sorted order (for the optimal a the optimal set
// is the n0 values nearest a, which are sorted-contiguous).
AffineWindowStat affine_window_stat(const Eigen::VectorXd& v, int n0);

struct SpreadParams {
    double c0; // in (0,1)
    double c1; // in (0, c0]
    double C;  // > 1
};

// Indices with sqrt(c1/c0)/sqrt(n) <= |x_i| <= C/sqrt(n).
std::vector<int> spread_set(const Eigen::VectorXd& x, const SpreadParams& params);

// Per-eigenvector max-abs coordinate.
Eigen::VectorXd sup_norm_profile(const SpectralDecomposition& s);

// Count of |v_i| < n^{-B}.
int small_coordinate_count(const Eigen::VectorXd& v, double B);

// ---- level-set decomposition (greedy sparse/mixed interval split) ----

struct LevelSetParams {
    double lambda_n; // interval scale, 0 < lambda_n < 1
    double delta_n;  // round-0 approximation radius
    double t0;       // per-round relaxation factor, > 1
    double alpha_n;  // drop-budget scale: budget = alpha_n * lambda_n * n
    double grid_denominator; // D: shifts live in Z/D, |a| <= sqrt(n)
};

// Paper-scale defaults: delta_n = (log n)^{-A0/lambda_n}, t0 = (log n)^64,
// alpha_n = (log n)^{-2}, D = ceil(n^{C+1/2}).
LevelSetParams level_set_params(int n, double lambda_n, double A0 = 2.0, double C = 2.0);

struct SparseInterval {
    int begin;
    int end;          // half-open [begin, end)
    double shift;     // a with target (a/sqrt(n)) 1
    std::vector<int> kept; // J', the undropped indices
    int round;        // selection round j
    double residual;  // ||v_{J'} - (a 1/sqrt(n))_{J'}||_2
};

struct LevelSetDecomposition {
    std::vector<SparseInterval> sparse_intervals;
    std::vector<std::pair<int, int>> mixed_intervals; // [begin, end)
    int i0 = 0; // number of sparse rounds
    LevelSetParams params;
};

// Greedy rounds: at round j select the lowest-index unselected interval
// admitting a shift a in Z/D and a kept subset of size >= |J| - budget with
// residual <= delta_n * t0^j. Rejects parameters with delta_n * t0^{8/lambda_n} >= 1.
LevelSetDecomposition level_set_decomposition(const Eigen::VectorXd& v, const LevelSetParams& params);

// Subset subroutine: for fixed (J, a) keep the coordinates nearest a/sqrt(n)
// after dropping at most `drop_budget` of the largest residuals; returns the
// minimal kept residual norm. Exposed for the exhaustive-oracle test.
double best_kept_residual(const Eigen::VectorXd& v, int begin, int end, double shift_over_sqrt_n,
                          int drop_budget, std::vector<int>* kept = nullptr);

// ---- approximate eigenvector check ----

struct ApproxEigvecRecord {
    double residual;  // ||(M - lambda0) v||_2
    double sum;       // |sum_i v_i|
    double norm_dev;  // | ||v||_2 - 1 |
    double grid_denominator;
    bool residual_ok;
    bool sum_ok;
    bool norm_ok;
    bool pass;
};

// Thresholds sqrt(n) log(n) n^{-C}, n^{1/2-C}, n^{-C}.
ApproxEigvecRecord approx_eigvec_check(const MatrixInstance& m, const Eigen::VectorXd& v,
                                       double lambda0, double D, double C = 2.0);

// Round entries to the grid Z/D.
Eigen::VectorXd round_to_grid(const Eigen::VectorXd& v, double D);

} // namespace rgl
