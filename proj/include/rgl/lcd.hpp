// Certified least-common-denominator scans.
//
// LCD_{kappa,gamma}(x) = inf{ theta > 0 : dist(theta x, Z^n) < min(gamma ||theta x||, kappa) }.
// The scan either finds a violating theta (re-verified by direct evaluation)
// or certifies the absence of violations on (0, theta_max] via a Lipschitz
// margin rule: dist(. , Z^n) is ||x||-Lipschitz in theta and the budget
// min(gamma theta, kappa) is gamma-Lipschitz, so a margin exceeding
// width * (||x|| + gamma) at both ends of an interval rules it out.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace rgl {

struct LcdParams {
    double kappa;     // > 0
    double gamma;     // in (0,1)
    double theta_max; // search ceiling
    double h = 0.0;   // base scan step; 0 means the adaptive default

    static LcdParams defaults_for(int n);
};

struct LcdDiagnostics {
    long grid_points = 0;
    long refinements = 0;
    double min_margin = 0.0;      // smallest certified margin seen
    double final_bracket = 0.0;   // width of the bracket localizing a violation
    double analytic_start = 0.0;  // (0, analytic_start] is violation-free by scaling
};

struct LcdResult {
    enum class Kind { Found, LowerBound };
    Kind kind;
    double theta;           // witness (Found) or the certified ceiling (LowerBound)
    double dist_at_witness; // dist(theta x, Z^n), Found only
    double step;
    LcdDiagnostics diag;

    bool found() const { return kind == Kind::Found; }
    // Certified level: violations are impossible at or below this theta.
    double certified() const { return found() ? theta : theta; }
};

double dist_to_lattice(double theta, const Eigen::VectorXd& x);

// Scans (0, theta_max]; the input is normalized first (zero vectors and
// h >= 1/4 are rejected).
LcdResult lcd_scan(const Eigen::VectorXd& x, const LcdParams& params);

// ---- partitioned variant D(v_I) = max_j min_{a in grid} LCD(v_{I_j} - a 1) ----

struct ShiftGrid {
    double a_max;       // grid spans [-a_max, a_max]
    double resolution;  // values snapped to multiples of this (Z / n^{C+1})
    int count;          // subsampled size (odd counts include 0)

    std::vector<double> values() const;
    // Paper-scale grid: a_max = n^{-1/2} log^2 n, resolution n^{-(C+1)}.
    static ShiftGrid paper_grid(int ambient_n, double C = 2.0, int count = 64);
};

struct PartitionedLcdPart {
    int part;
    LcdResult best;          // min over shifts
    double best_shift;
    int degenerate_shifts;   // skipped |v - a 1| below 1e-10
};

struct PartitionedLcdResult {
    LcdResult overall;       // max over parts; lower bounds propagate
    std::vector<PartitionedLcdPart> parts;
    int shifts_tested;
    bool subsampled;         // grid coarser than the full Z/n^{C+1} lattice
};

PartitionedLcdResult partitioned_lcd(const Eigen::VectorXd& v_I, int part_count,
                                     const LcdParams& params, const ShiftGrid& grid);

// Both sides of the subvector relation
//   LCD_{kappa, gamma ||x||/||x'||}(x'/||x'||) <= (||x'||/||x||) LCD_{kappa,gamma}(x/||x||).
struct SubvectorRelation {
    LcdResult lhs;
    LcdResult rhs_scan;     // scan of the full vector
    double rhs;             // scaled: (||x'||/||x||) * rhs_scan.theta
    bool conclusive;
    bool holds;             // only meaningful when conclusive
};

SubvectorRelation subvector_lcd_relation(const Eigen::VectorXd& x, const std::vector<int>& sub,
                                         const LcdParams& params);

} // namespace rgl
