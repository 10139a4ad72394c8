// Continuous-time quantum walk driven by a graph Laplacian: evolution,
// time-averaged and limiting distributions, and the gap-based discrepancy
// bound.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rgl/spectra.hpp"

namespace rgl {

struct WalkConfig {
    double gamma = 1.0;        // Hamiltonian scaling
    Eigen::VectorXcd psi0;     // unit initial state
    double T = 1.0;            // averaging horizon

    void validate(int n) const;
};

// e^{-i gamma L t} psi0 through the spectral decomposition; norm preserved.
Eigen::VectorXcd evolve(const SpectralDecomposition& s, const WalkConfig& cfg, double t);

// Closed form P_f(T) = sum_{i,l} <f|v_i><v_i|psi0><psi0|v_l><v_l|f> K_T(lambda_i - lambda_l)
// with K_T(d) = (1 - e^{-i gamma d T})/(i gamma d T), K_T(0) = 1. Fails if the
// imaginary residue exceeds 1e-10.
Eigen::VectorXd time_avg_distribution(const SpectralDecomposition& s, const WalkConfig& cfg);

// P_f(infinity); degenerate eigenvalues are merged into cluster projectors.
Eigen::VectorXd limiting_distribution(const SpectralDecomposition& s, const WalkConfig& cfg,
                                      double cluster_tol_scale = 1e-8);

struct WalkReport {
    Eigen::VectorXd P_T;
    Eigen::VectorXd P_inf;
    double discrepancy;      // sum_f |P_f(T) - P_f(inf)|
    double bound;            // sum_{i != l} 2 |<v_i|psi0>||<v_l|psi0>| / (gamma T |lambda_i - lambda_l|)
    bool bound_available;    // spectrum simple at tau_simple
    bool bound_holds;        // discrepancy <= bound (when available)
};

WalkReport discrepancy(const SpectralDecomposition& s, const WalkConfig& cfg,
                       double tau_simple = kEighResidualTol);

// Simpson quadrature of (1/T) int_0^T |<f|psi(t)>|^2 dt on `nodes` points
// (test oracle for the closed form).
Eigen::VectorXd time_avg_quadrature(const SpectralDecomposition& s, const WalkConfig& cfg,
                                    int nodes);

} // namespace rgl
