// Dense symmetric matrix variants built from a graph sample: L = D - A,
// E L = pnI - pJ, the centered model Lbar = L - E L, and the U2 rotation
// of the last two coordinates.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "rgl/graph.hpp"

namespace rgl {

enum class MatrixRole {
    Laplacian,
    CenteredLaplacian,
    RotatedCenteredLaplacian,
    ExpectedLaplacian,
    Principal,
    General,
};

std::string to_string(MatrixRole role);

struct Provenance {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    int generation = 0;
    std::string chain; // e.g. "laplacian", "centered|rotate2"
};

struct MatrixInstance {
    Eigen::MatrixXd data; // constructed symmetric
    MatrixRole role = MatrixRole::General;
    Provenance provenance;

    int n() const { return int(data.rows()); }
};

MatrixInstance laplacian(const GraphSample& g);
MatrixInstance expected_laplacian(int n, double p);
MatrixInstance centered_laplacian(const GraphSample& g);

// Conjugates coordinates n-1, n by the rotation with rows
// (1/sqrt2, -1/sqrt2), (1/sqrt2, 1/sqrt2). Spectrum preserved.
MatrixInstance rotate_last_two(const MatrixInstance& m);

// Leading principal minor of order k.
MatrixInstance principal_minor(const MatrixInstance& m, int k);

MatrixInstance as_general(Eigen::MatrixXd m);

// Full symmetric matrix as CSV, 17 significant digits.
void store_matrix_csv(const MatrixInstance& m, const std::string& path);

} // namespace rgl
