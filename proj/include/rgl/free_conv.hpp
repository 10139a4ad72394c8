// Density of the free convolution of the semicircular law with a reference
// measure (standard Gaussian, or a point mass for the semicircle check),
// via the self-consistent Stieltjes equation
//     m = \int d nu(x) / (x - (E + i eta) - m)
// solved by damped fixed-point iteration. density(E) = Im(m) / pi.
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace rgl {

struct FreeConvConfig {
    double eta = 1e-3;        // spectral broadening, in (0, 0.1]
    int quad_nodes = 2001;    // Gauss-Legendre nodes on [-support, support]
    double support = 8.0;     // covers +-8 standard deviations of the Gaussian
    double damping = 0.5;
    int max_iterations = 100000;
    double tol = 1e-10;       // fixed-point residual |m_{k+1} - m_k|
    bool point_mass_at_zero = false; // replace the Gaussian by delta_0
};

struct FreeConvDensity {
    std::vector<double> grid;      // E values
    std::vector<double> density;   // nonnegative
    double mass;                   // trapezoid integral over the grid
};

// Throws with the offending E and last residual on non-convergence.
FreeConvDensity free_conv_density(const std::vector<double>& e_grid, const FreeConvConfig& cfg);

// Single-point solve (same iteration); exposed for tests.
std::complex<double> free_conv_stieltjes(double e, const FreeConvConfig& cfg);

// CDF on the grid by cumulative trapezoid, clamped to [0,1]; linear
// interpolation between grid points. Used by the ESD comparison.
std::function<double(double)> free_conv_cdf(const FreeConvDensity& d);

// Gauss-Legendre nodes/weights on [a,b] (Newton on Legendre polynomials).
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

} // namespace rgl
