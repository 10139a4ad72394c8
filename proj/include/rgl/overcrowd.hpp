// Overcrowding statistics sigma_{n-k+1}(L+F) and greedy well-conditioned
// column selection.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "rgl/matrix.hpp"
#include "rgl/stats.hpp"

namespace rgl {

struct OvercrowdRecord {
    int k;
    double sigma;      // k-th smallest singular value of m + F
    double threshold;  // c k / sqrt(n)
    double c;
    std::string f_kind; // "zero", "-median I", or "custom"
    bool below;         // sigma <= threshold
};

// F defaults to zero; F must be symmetric and the same size.
OvercrowdRecord overcrowding_stat(const MatrixInstance& m, const Eigen::MatrixXd* F, int k,
                                  double c);

struct OvercrowdCurveRow {
    int k;
    double p_hat;
    double ci_lo;
    double ci_hi;
    long trials;
};

enum class OvercrowdShift { Zero, MedianEigenvalue };

std::vector<OvercrowdCurveRow> overcrowding_curve(int n, double p, OvercrowdShift shift,
                                                  const std::vector<int>& k_list, double c,
                                                  int trials, std::uint64_t seed, int workers = 0);

struct ColumnSelection {
    std::vector<int> indices;  // l selected columns
    double sigma_l;            // l-th singular value of the selected submatrix
    double rhs;                // max_r sqrt((r-l) sum_{i>=r} sigma_i(A)^2 / (n r)), c = 1
};

// Greedy pivoted orthogonalization, largest residual norm first.
// Requires full row rank; 1 <= l <= k-1 for a k x n input.
ColumnSelection select_columns(const Eigen::MatrixXd& a, int l);

} // namespace rgl
