#include "rgl/lcd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rgl {

LcdParams LcdParams::defaults_for(int n) {
    LcdParams p;
    p.kappa = std::pow(double(n), 1.0 / 3.0);
    p.gamma = 0.1;
    p.theta_max = double(n) * double(n);
    p.h = 0.0;
    return p;
}

double dist_to_lattice(double theta, const Eigen::VectorXd& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double t = theta * x(i);
        const double d = t - std::nearbyint(t);
        s += d * d;
    }
    return std::sqrt(s);
}

namespace {

constexpr double kBracketWidth = 1e-9;

struct Scanner {
    const Eigen::VectorXd& x; // unit
    double gamma;
    double kappa;
    double lip; // ||x|| + gamma = 1 + gamma
    LcdDiagnostics* diag;

    double margin(double theta) const {
        return dist_to_lattice(theta, x) - std::min(gamma * theta, kappa);
    }

    bool violates(double theta) const { return margin(theta) < 0.0; }

    // Earliest violating point in [a, b], given endpoint margins; nullopt if
    // the interval is certified clean.
    std::optional<double> refine(double a, double b, double ma, double mb) const {
        const double w = b - a;
        if (ma > w * lip && mb > w * lip) {
            diag->min_margin = std::min(diag->min_margin, std::min(ma, mb));
            return std::nullopt;
        }
        if (ma < 0.0) return a;
        if (w <= kBracketWidth) {
            if (mb < 0.0) {
                diag->final_bracket = w;
                return b;
            }
            const double mid = 0.5 * (a + b);
            if (violates(mid)) {
                diag->final_bracket = w;
                return mid;
            }
            // Tangential contact narrower than the bracket: refuse to certify.
            throw std::runtime_error("lcd_scan: cannot certify interval near theta=" +
                                     std::to_string(mid));
        }
        ++diag->refinements;
        const double mid = 0.5 * (a + b);
        const double mm = margin(mid);
        if (auto r = refine(a, mid, ma, mm)) return r;
        return refine(mid, b, mm, mb);
    }
};

} // namespace

LcdResult lcd_scan(const Eigen::VectorXd& x_in, const LcdParams& params) {
    const double norm = x_in.norm();
    if (norm < 1e-300) throw std::invalid_argument("lcd_scan: zero vector");
    if (!(params.gamma > 0.0 && params.gamma < 1.0))
        throw std::invalid_argument("lcd_scan: gamma outside (0,1)");
    if (params.kappa <= 0.0) throw std::invalid_argument("lcd_scan: kappa must be positive");
    if (params.theta_max <= 0.0) throw std::invalid_argument("lcd_scan: theta_max must be positive");

    Eigen::VectorXd x = x_in / norm;
    const int n = int(x.size());
    const double xmax = x.cwiseAbs().maxCoeff();

    double h = params.h;
    if (h <= 0.0) h = std::min(1.0 / (8.0 * xmax * double(n)), 1e-3);
    if (h >= 0.25) throw std::invalid_argument("lcd_scan: step h >= 1/4, certificate vacuous");

    LcdResult res;
    res.step = h;
    Scanner sc{x, params.gamma, params.kappa, 1.0 + params.gamma, &res.diag};
    res.diag.min_margin = std::numeric_limits<double>::infinity();

    // On (0, 1/(2 max|x_i|)] every coordinate satisfies d(theta x_i, Z) = |theta x_i|,
    // so dist = theta ||x|| = theta > gamma*theta: violation-free analytically.
    const double start = std::min(0.5 / xmax, params.theta_max);
    res.diag.analytic_start = start;

    double prev = start;
    double mprev = sc.margin(prev);
    ++res.diag.grid_points;
    std::optional<double> hit;
    if (mprev < 0.0) hit = prev; // only possible if kappa < gamma*start bites immediately
    while (!hit && prev < params.theta_max) {
        const double next = std::min(prev + h, params.theta_max);
        const double mnext = sc.margin(next);
        ++res.diag.grid_points;
        if (mprev > (next - prev) * sc.lip && mnext > (next - prev) * sc.lip) {
            res.diag.min_margin = std::min(res.diag.min_margin, std::min(mprev, mnext));
        } else {
            hit = sc.refine(prev, next, mprev, mnext);
        }
        prev = next;
        mprev = mnext;
    }

    if (hit) {
        res.kind = LcdResult::Kind::Found;
        res.theta = *hit;
        res.dist_at_witness = dist_to_lattice(*hit, x);
        // Witness re-verified against the definition.
        if (!(res.dist_at_witness < std::min(params.gamma * *hit, params.kappa)))
            throw std::runtime_error("lcd_scan: witness failed re-verification");
    } else {
        res.kind = LcdResult::Kind::LowerBound;
        res.theta = params.theta_max;
        res.dist_at_witness = 0.0;
    }
    return res;
}

std::vector<double> ShiftGrid::values() const {
    std::vector<double> v;
    if (count <= 1) {
        v.push_back(0.0);
        return v;
    }
    for (int k = 0; k < count; ++k) {
        double a = -a_max + 2.0 * a_max * double(k) / double(count - 1);
        if (resolution > 0.0) a = std::round(a / resolution) * resolution;
        v.push_back(a);
    }
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

ShiftGrid ShiftGrid::paper_grid(int ambient_n, double C, int count) {
    ShiftGrid g;
    const double ln = std::log(double(ambient_n));
    g.a_max = ln * ln / std::sqrt(double(ambient_n));
    g.resolution = std::pow(double(ambient_n), -(C + 1.0));
    g.count = count;
    return g;
}

PartitionedLcdResult partitioned_lcd(const Eigen::VectorXd& v_I, int part_count,
                                     const LcdParams& params, const ShiftGrid& grid) {
    const int m = int(v_I.size());
    if (part_count < 1 || part_count > m)
        throw std::invalid_argument("partitioned_lcd: bad part count");

    const std::vector<double> shifts = grid.values();
    PartitionedLcdResult out;
    out.shifts_tested = int(shifts.size());
    out.subsampled = grid.resolution > 0.0 &&
                     shifts.size() < std::size_t(2.0 * grid.a_max / grid.resolution) + 1;

    int pos = 0;
    for (int j = 0; j < part_count; ++j) {
        const int len = m / part_count + (j < m % part_count ? 1 : 0);
        Eigen::VectorXd part = v_I.segment(pos, len);
        pos += len;

        PartitionedLcdPart pr;
        pr.part = j;
        pr.degenerate_shifts = 0;
        bool have = false;
        for (double a : shifts) {
            Eigen::VectorXd shifted = part.array() - a;
            if (shifted.norm() < 1e-10) {
                ++pr.degenerate_shifts;
                continue;
            }
            LcdResult r = lcd_scan(shifted, params);
            // min over shifts: any Found below the current best wins; a
            // LowerBound only stands if nothing was found.
            if (!have) {
                pr.best = r;
                pr.best_shift = a;
                have = true;
            } else if (r.found() && (!pr.best.found() || r.theta < pr.best.theta)) {
                pr.best = r;
                pr.best_shift = a;
            }
        }
        if (!have) throw std::runtime_error("partitioned_lcd: all shifts degenerate in part " +
                                            std::to_string(j));
        out.parts.push_back(std::move(pr));
    }

    // max over parts; a lower bound dominates any Found below theta_max.
    const PartitionedLcdPart* best = &out.parts.front();
    for (const auto& pr : out.parts) {
        const bool pr_lb = !pr.best.found();
        const bool best_lb = !best->best.found();
        if (pr_lb && !best_lb) best = &pr;
        else if (pr_lb == best_lb && pr.best.theta > best->best.theta) best = &pr;
    }
    out.overall = best->best;
    return out;
}

SubvectorRelation subvector_lcd_relation(const Eigen::VectorXd& x, const std::vector<int>& sub,
                                         const LcdParams& params) {
    if (sub.empty()) throw std::invalid_argument("subvector_lcd_relation: empty subset");
    Eigen::VectorXd xp(sub.size());
    for (std::size_t k = 0; k < sub.size(); ++k) xp(k) = x(sub[k]);

    const double nx = x.norm(), nxp = xp.norm();
    if (nxp == 0.0) throw std::invalid_argument("subvector_lcd_relation: zero subvector");
    const double gamma_sub = params.gamma * nx / nxp;
    if (gamma_sub >= 1.0)
        throw std::invalid_argument("subvector_lcd_relation: gamma ||x||/||x'|| must be < 1");

    LcdParams lhs_params = params;
    lhs_params.gamma = gamma_sub;

    SubvectorRelation rel;
    rel.lhs = lcd_scan(xp, lhs_params);
    rel.rhs_scan = lcd_scan(x, params);
    rel.rhs = (nxp / nx) * rel.rhs_scan.theta;

    const bool lhs_found = rel.lhs.found();
    const bool rhs_found = rel.rhs_scan.found();
    rel.conclusive = rhs_found; // Found rhs with either lhs outcome decides it
    if (lhs_found && rhs_found)
        rel.holds = rel.lhs.theta <= rel.rhs * (1.0 + 1e-9) + 1e-9;
    else if (!lhs_found && rhs_found)
        rel.holds = rel.rhs > rel.lhs.theta * (1.0 - 1e-9) - 1e-9; // lhs certified > theta_max
    else
        rel.holds = true; // inconclusive
    return rel;
}

} // namespace rgl
