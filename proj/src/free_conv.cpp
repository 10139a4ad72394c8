#include "rgl/free_conv.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rgl {

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, Newton refinement.
        double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - double(j) * p2) / double(j + 1);
            }
            pp = double(n) * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = 2.0 * half / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace {

struct Quadrature {
    std::vector<double> x;
    std::vector<double> w; // includes the Gaussian density factor
};

Quadrature gaussian_quadrature(const FreeConvConfig& cfg) {
    Quadrature q;
    if (cfg.point_mass_at_zero) {
        q.x = {0.0};
        q.w = {1.0};
        return q;
    }
    std::vector<double> nodes, weights;
    gauss_legendre(cfg.quad_nodes, -cfg.support, cfg.support, nodes, weights);
    const double c = 1.0 / std::sqrt(2.0 * M_PI);
    q.x = nodes;
    q.w.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        q.w[i] = weights[i] * c * std::exp(-0.5 * nodes[i] * nodes[i]);
    return q;
}

std::complex<double> solve_point(double e, const Quadrature& q, const FreeConvConfig& cfg,
                                 std::complex<double> m0) {
    const std::complex<double> z(e, cfg.eta);
    std::complex<double> m = m0;
    double res = 0.0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        std::complex<double> next(0.0, 0.0);
        for (std::size_t i = 0; i < q.x.size(); ++i) next += q.w[i] / (q.x[i] - z - m);
        res = std::abs(next - m);
        m = (1.0 - cfg.damping) * m + cfg.damping * next;
        if (m.imag() < 0.0) m = std::complex<double>(m.real(), 1e-300);
        if (res < cfg.tol) return m;
    }
    throw std::runtime_error("free_conv_density: no convergence at E=" + std::to_string(e) +
                             ", residual " + std::to_string(res));
}

} // namespace

std::complex<double> free_conv_stieltjes(double e, const FreeConvConfig& cfg) {
    if (cfg.eta <= 0.0 || cfg.eta > 0.1)
        throw std::invalid_argument("free_conv: eta must lie in (0, 0.1]");
    return solve_point(e, gaussian_quadrature(cfg), cfg, std::complex<double>(0.0, 1.0));
}

FreeConvDensity free_conv_density(const std::vector<double>& e_grid, const FreeConvConfig& cfg) {
    if (cfg.eta <= 0.0 || cfg.eta > 0.1)
        throw std::invalid_argument("free_conv: eta must lie in (0, 0.1]");
    const Quadrature q = gaussian_quadrature(cfg);

    FreeConvDensity out;
    out.grid = e_grid;
    out.density.resize(e_grid.size());
    std::complex<double> warm(0.0, 1.0); // warm start along the grid
    for (std::size_t k = 0; k < e_grid.size(); ++k) {
        std::complex<double> m = solve_point(e_grid[k], q, cfg, warm);
        warm = m;
        out.density[k] = std::max(0.0, m.imag() / M_PI);
    }
    out.mass = 0.0;
    for (std::size_t k = 0; k + 1 < e_grid.size(); ++k)
        out.mass += 0.5 * (out.density[k] + out.density[k + 1]) * (e_grid[k + 1] - e_grid[k]);
    return out;
}

std::function<double(double)> free_conv_cdf(const FreeConvDensity& d) {
    std::vector<double> grid = d.grid;
    std::vector<double> cum(grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k)
        cum[k + 1] = cum[k] + 0.5 * (d.density[k] + d.density[k + 1]) * (grid[k + 1] - grid[k]);
    const double total = cum.back() > 0.0 ? cum.back() : 1.0;
    for (double& c : cum) c /= total;
    return [grid, cum](double x) {
        if (x <= grid.front()) return 0.0;
        if (x >= grid.back()) return 1.0;
        std::size_t lo = 0, hi = grid.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (grid[mid] <= x) lo = mid; else hi = mid;
        }
        const double f = (x - grid[lo]) / (grid[hi] - grid[lo]);
        return cum[lo] * (1.0 - f) + cum[hi] * f;
    };
}

} // namespace rgl
