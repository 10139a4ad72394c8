// Small-ball (Levy) concentration: exact enumeration on small instances,
// Monte Carlo at scale, the affine variant with a shift grid, the LCD-based
// bound, the tensorization bound, and distance-to-subspace samples.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "rgl/lcd.hpp"
#include "rgl/rng.hpp"
#include "rgl/stats.hpp"

namespace rgl {

struct AtomDistribution {
    enum class Kind { FairSign, CenteredBernoulli, Gaussian };
    Kind kind = Kind::FairSign;
    double p = 0.5;        // CenteredBernoulli parameter
    bool normalize = false; // rescale to variance 1

    double sample(RngStream& rng) const;
    double variance() const;
    bool discrete() const { return kind != Kind::Gaussian; }

    static AtomDistribution fair_sign() { return {Kind::FairSign, 0.5, false}; }
    static AtomDistribution centered_bernoulli(double p, bool normalize = false) {
        return {Kind::CenteredBernoulli, p, normalize};
    }
    static AtomDistribution gaussian() { return {Kind::Gaussian, 0.5, false}; }
};

struct SmallBallEstimate {
    double rho;
    double epsilon;
    long samples;       // 2^n outcomes (exact) or N (Monte Carlo)
    double ci_half;     // Wilson 95% half-width; 0 in exact mode
    bool exact;
    double best_center;       // maximizing a
    double best_shift = 0.0;  // affine variant: maximizing w-bar
};

// sup_a P(|sum w_i xi_i - a| <= eps) by full enumeration (n <= 24, discrete atoms).
SmallBallEstimate levy_exact(const Eigen::VectorXd& w, double eps, const AtomDistribution& dist);

// Monte Carlo estimate with a sorted sliding window, exact sup over a on the
// sampled sums. Deterministic for fixed (seed, N) regardless of worker count.
SmallBallEstimate levy_mc(const Eigen::VectorXd& w, double eps, const AtomDistribution& dist,
                          long N, std::uint64_t seed);

// Affine variant rho_{L,r}(w) = sup_{a, wbar} P(|X . (w - wbar 1) - a| < r):
// outer grid over wbar with one refinement pass around the argmax.
SmallBallEstimate levy_affine(const Eigen::VectorXd& w, double r, const AtomDistribution& dist,
                              int shift_grid, long N, std::uint64_t seed);

// Exact affine oracle on a wbar grid (n <= 24, discrete atoms).
SmallBallEstimate levy_affine_exact(const Eigen::VectorXd& w, double r,
                                    const AtomDistribution& dist, int shift_grid);

struct LcdBoundRecord {
    double rho;
    double bound;       // C_fit * eps/gamma + exp(-kappa^2/2)
    double certificate; // certified LCD level used for the hypothesis check
    double epsilon;
    bool holds;
};

// Theorem hypothesis eps >= 1 / (certified LCD); rejects eps below it.
LcdBoundRecord lcd_smallball_compare(const Eigen::VectorXd& x, const LcdParams& params,
                                     double eps, const AtomDistribution& dist, long N,
                                     std::uint64_t seed, double c_fit = 10.0);

struct TensorizationRecord {
    double probability; // MC estimate of P(sum x_i^2 < delta^2 n)
    double bound;       // (C0 K delta)^n
    double ci_half;
};

TensorizationRecord tensorization_check(double K, double delta0, double delta, int n,
                                        const AtomDistribution& dist, long N, std::uint64_t seed,
                                        double C0 = 3.097);

struct DistanceToSubspaceResult {
    std::vector<double> distances;
    double median;
    double q05;
    double q95;
};

// Distances ||P_{H-perp} v - u||_2 over trials; H-perp is a fixed random
// k-frame (orthonormalized Gaussian, drawn once from its own stream) unless
// a frame is supplied.
DistanceToSubspaceResult distance_to_subspace_stat(int n, int k, const AtomDistribution& dist,
                                                   const Eigen::VectorXd& u, int trials,
                                                   std::uint64_t seed,
                                                   const Eigen::MatrixXd* frame = nullptr);

} // namespace rgl
