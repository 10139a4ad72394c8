#include "rgl/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rgl {

std::string to_string(MatrixRole role) {
    switch (role) {
        case MatrixRole::Laplacian: return "laplacian";
        case MatrixRole::CenteredLaplacian: return "centered_laplacian";
        case MatrixRole::RotatedCenteredLaplacian: return "rotated_centered_laplacian";
        case MatrixRole::ExpectedLaplacian: return "expected_laplacian";
        case MatrixRole::Principal: return "principal";
        case MatrixRole::General: return "general";
    }
    return "general";
}

static Provenance provenance_of(const GraphSample& g, const std::string& chain) {
    return Provenance{g.n(), g.p(), g.seed(), g.generation(), chain};
}

MatrixInstance laplacian(const GraphSample& g) {
    const int n = g.n();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    // Integer-valued entries; exact in double up to 2^53.
    for (int i = 0; i < n; ++i) {
        m(i, i) = double(g.degrees()[i]);
        for (int j = i + 1; j < n; ++j)
            if (g.edge(i, j)) { m(i, j) = -1.0; m(j, i) = -1.0; }
    }
    return MatrixInstance{std::move(m), MatrixRole::Laplacian, provenance_of(g, "laplacian")};
}

MatrixInstance expected_laplacian(int n, double p) {
    if (n < 2) throw std::invalid_argument("expected_laplacian: n must be >= 2");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("expected_laplacian: p outside [0,1]");
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, -p);
    for (int i = 0; i < n; ++i) m(i, i) = p * double(n) - p;
    return MatrixInstance{std::move(m), MatrixRole::ExpectedLaplacian,
                          Provenance{n, p, 0, 0, "expected_laplacian"}};
}

MatrixInstance centered_laplacian(const GraphSample& g) {
    const int n = g.n();
    const double p = g.p();
    Eigen::MatrixXd m(n, n);
    // Off-diagonal entry is p - a_ij; the diagonal is the negated row sum of
    // the off-diagonal entries, accumulated in ascending j, so row sums vanish
    // exactly (bit-exactly for dyadic p).
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double v = g.edge(i, j) ? p - 1.0 : p;
            m(i, j) = v;
            row += v;
        }
        m(i, i) = -row;
    }
    // a_ij = a_ji makes this symmetric by construction.
    return MatrixInstance{std::move(m), MatrixRole::CenteredLaplacian,
                          provenance_of(g, "centered_laplacian")};
}

MatrixInstance rotate_last_two(const MatrixInstance& m) {
    const int n = m.n();
    if (n < 3) throw std::invalid_argument("rotate_last_two: n must be >= 3");
    const double s = 1.0 / std::sqrt(2.0);

    Eigen::MatrixXd b = m.data;
    // Column update: col' = (col_{n-1} + col_n)/sqrt2, (col_n - col_{n-1})/sqrt2.
    Eigen::VectorXd c1 = b.col(n - 2), c2 = b.col(n - 1);
    b.col(n - 2) = s * (c1 + c2);
    b.col(n - 1) = s * (c2 - c1);
    // Same on rows.
    Eigen::RowVectorXd r1 = b.row(n - 2), r2 = b.row(n - 1);
    b.row(n - 2) = s * (r1 + r2);
    b.row(n - 1) = s * (r2 - r1);

    // Enforce exact symmetry from the upper triangle.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) b(j, i) = b(i, j);

    MatrixRole role = (m.role == MatrixRole::CenteredLaplacian)
                          ? MatrixRole::RotatedCenteredLaplacian
                          : MatrixRole::General;
    Provenance prov = m.provenance;
    prov.chain += "|rotate_last_two";
    return MatrixInstance{std::move(b), role, std::move(prov)};
}

MatrixInstance principal_minor(const MatrixInstance& m, int k) {
    if (k < 1 || k > m.n()) throw std::invalid_argument("principal_minor: order out of range");
    Provenance prov = m.provenance;
    prov.chain += "|minor" + std::to_string(k);
    return MatrixInstance{m.data.topLeftCorner(k, k), MatrixRole::Principal, std::move(prov)};
}

MatrixInstance as_general(Eigen::MatrixXd m) {
    const int n = int(m.rows());
    return MatrixInstance{std::move(m), MatrixRole::General, Provenance{n, 0, 0, 0, "general"}};
}

void store_matrix_csv(const MatrixInstance& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("store_matrix_csv: cannot open " + path);
    char buf[64];
    for (int i = 0; i < m.n(); ++i) {
        for (int j = 0; j < m.n(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m.data(i, j));
            f << buf << (j + 1 < m.n() ? "," : "");
        }
        f << "\r\n";
    }
}

} // namespace rgl
