#include "rgl/qwalk.hpp"

#include <cmath>
#include <stdexcept>

namespace rgl {

void WalkConfig::validate(int n) const {
    if (psi0.size() != n) throw std::invalid_argument("walk: psi0 dimension mismatch");
    if (std::fabs(psi0.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("walk: psi0 must be a unit state");
    if (!(gamma > 0.0)) throw std::invalid_argument("walk: gamma must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("walk: T must be positive");
}

Eigen::VectorXcd evolve(const SpectralDecomposition& s, const WalkConfig& cfg, double t) {
    cfg.validate(s.n());
    const Eigen::VectorXcd c = s.eigenvectors.transpose() * cfg.psi0; // <v_i|psi0>
    Eigen::VectorXcd phased(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double phi = -cfg.gamma * s.eigenvalues(i) * t;
        phased(i) = c(i) * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    return s.eigenvectors * phased;
}

namespace {

std::complex<double> kernel_KT(double diff, double gamma, double T) {
    const double x = gamma * diff * T;
    if (x == 0.0) return {1.0, 0.0};
    // (1 - e^{-ix}) / (ix)
    const std::complex<double> num = 1.0 - std::complex<double>(std::cos(x), -std::sin(x));
    return num / std::complex<double>(0.0, x);
}

} // namespace

Eigen::VectorXd time_avg_distribution(const SpectralDecomposition& s, const WalkConfig& cfg) {
    cfg.validate(s.n());
    const int n = s.n();
    const Eigen::VectorXcd c = s.eigenvectors.transpose() * cfg.psi0;

    Eigen::MatrixXcd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            K(i, l) = kernel_KT(s.eigenvalues(i) - s.eigenvalues(l), cfg.gamma, cfg.T);

    // P_f = sum_{i,l} v_i[f] v_l[f] c_i conj(c_l) K(i,l)
    Eigen::MatrixXcd W = s.eigenvectors.cast<std::complex<double>>() * c.asDiagonal();
    Eigen::MatrixXcd M = W * K; // n x n
    Eigen::VectorXd out(n);
    double max_imag = 0.0;
    for (int f = 0; f < n; ++f) {
        const std::complex<double> val = (M.row(f).array() * W.row(f).array().conjugate()).sum();
        max_imag = std::max(max_imag, std::fabs(val.imag()));
        out(f) = val.real();
    }
    if (max_imag > 1e-10)
        throw std::runtime_error("time_avg_distribution: imaginary residue " +
                                 std::to_string(max_imag));
    return out;
}

Eigen::VectorXd limiting_distribution(const SpectralDecomposition& s, const WalkConfig& cfg,
                                      double cluster_tol_scale) {
    cfg.validate(s.n());
    const int n = s.n();
    const double tol = cluster_tol_scale * (1.0 + s.operator_norm());
    const Eigen::VectorXcd c = s.eigenvectors.transpose() * cfg.psi0;

    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && s.eigenvalues(end) - s.eigenvalues(end - 1) <= tol) ++end;
        // |<f| Pi_cluster |psi0>|^2
        Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(n);
        for (int i = start; i < end; ++i)
            amp += s.eigenvectors.col(i).cast<std::complex<double>>() * c(i);
        out += amp.cwiseAbs2();
        start = end;
    }
    return out;
}

WalkReport discrepancy(const SpectralDecomposition& s, const WalkConfig& cfg, double tau_simple) {
    cfg.validate(s.n());
    const int n = s.n();
    WalkReport rep;
    rep.P_T = time_avg_distribution(s, cfg);
    rep.P_inf = limiting_distribution(s, cfg);
    rep.discrepancy = (rep.P_T - rep.P_inf).lpNorm<1>();

    const GapReport gr = gaps(s, tau_simple);
    rep.bound_available = gr.simple;
    rep.bound = 0.0;
    rep.bound_holds = false;
    if (rep.bound_available) {
        const Eigen::VectorXcd c = s.eigenvectors.transpose() * cfg.psi0;
        Eigen::VectorXd absc = c.cwiseAbs();
        double b = 0.0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (i == l) continue;
                b += 2.0 * absc(i) * absc(l) /
                     (cfg.gamma * cfg.T * std::fabs(s.eigenvalues(i) - s.eigenvalues(l)));
            }
        rep.bound = b;
        rep.bound_holds = rep.discrepancy <= rep.bound;
    }
    return rep;
}

Eigen::VectorXd time_avg_quadrature(const SpectralDecomposition& s, const WalkConfig& cfg,
                                    int nodes) {
    cfg.validate(s.n());
    if (nodes < 3) throw std::invalid_argument("time_avg_quadrature: need >= 3 nodes");
    if (nodes % 2 == 0) ++nodes; // Simpson needs an even interval count
    const int n = s.n();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
    const double h = cfg.T / double(nodes - 1);
    for (int k = 0; k < nodes; ++k) {
        const Eigen::VectorXd prob = evolve(s, cfg, h * double(k)).cwiseAbs2();
        const double wgt = (k == 0 || k == nodes - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += wgt * prob;
    }
    return acc * (h / 3.0) / cfg.T;
}

} // namespace rgl
