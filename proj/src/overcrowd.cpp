#include "rgl/overcrowd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rgl/runner.hpp"
#include "rgl/spectra.hpp"

namespace rgl {

OvercrowdRecord overcrowding_stat(const MatrixInstance& m, const Eigen::MatrixXd* F, int k,
                                  double c) {
    const int n = m.n();
    if (k < 1 || k > n) throw std::invalid_argument("overcrowding_stat: k out of range");
    Eigen::MatrixXd a = m.data;
    std::string f_kind = "zero";
    if (F) {
        if (F->rows() != n || F->cols() != n)
            throw std::invalid_argument("overcrowding_stat: F shape mismatch");
        a += *F;
        f_kind = "custom";
    }
    // Symmetric input: singular values are |eigenvalues|.
    Eigen::VectorXd ev = eigenvalues_only(a);
    std::vector<double> abs_ev(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) abs_ev[i] = std::fabs(ev(i));
    std::sort(abs_ev.begin(), abs_ev.end());

    OvercrowdRecord r;
    r.k = k;
    r.sigma = abs_ev[k - 1]; // k-th smallest = sigma_{n-k+1}
    r.c = c;
    r.threshold = c * double(k) / std::sqrt(double(n));
    r.f_kind = f_kind;
    r.below = r.sigma <= r.threshold;
    return r;
}

std::vector<OvercrowdCurveRow> overcrowding_curve(int n, double p, OvercrowdShift shift,
                                                  const std::vector<int>& k_list, double c,
                                                  int trials, std::uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("overcrowding_curve: trials must be positive");
    for (int k : k_list)
        if (k < 1 || k > n) throw std::invalid_argument("overcrowding_curve: k out of range");

    // Per-trial k-th smallest |eigenvalue| for every requested k.
    auto per_trial = run_trials<std::vector<double>>(trials, workers, seed, [&](int t, RngStream rng) {
        (void)t;
        GraphSample g = sample_gnp(n, p, rng);
        Eigen::MatrixXd a = laplacian(g).data;
        if (shift == OvercrowdShift::MedianEigenvalue) {
            Eigen::VectorXd ev0 = eigenvalues_only(a);
            const double med = ev0(ev0.size() / 2);
            a.diagonal().array() -= med;
        }
        Eigen::VectorXd ev = eigenvalues_only(a);
        std::vector<double> abs_ev(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i) abs_ev[i] = std::fabs(ev(i));
        std::sort(abs_ev.begin(), abs_ev.end());
        std::vector<double> out;
        out.reserve(k_list.size());
        for (int k : k_list) out.push_back(abs_ev[k - 1]);
        return out;
    });

    std::vector<OvercrowdCurveRow> rows;
    for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
        const double thr = c * double(k_list[ki]) / std::sqrt(double(n));
        long hits = 0;
        for (const auto& tr : per_trial)
            if (tr[ki] <= thr) ++hits;
        WilsonInterval w = wilson_interval(hits, trials);
        rows.push_back(OvercrowdCurveRow{k_list[ki], w.p_hat, w.lo, w.hi, trials});
    }
    return rows;
}

ColumnSelection select_columns(const Eigen::MatrixXd& a, int l) {
    const int k = int(a.rows());
    const int n = int(a.cols());
    if (l < 1 || l > k - 1) throw std::invalid_argument("select_columns: need 1 <= l <= k-1");

    Eigen::VectorXd sv = singular_values(a);
    if (sv(k - 1) <= 1e-12 * std::max(1.0, sv(0)))
        throw std::invalid_argument("select_columns: input is rank deficient");

    // Greedy pivoted orthogonalization on a working copy.
    Eigen::MatrixXd r = a;
    std::vector<int> chosen;
    std::vector<bool> used(n, false);
    for (int step = 0; step < l; ++step) {
        int best = -1;
        double best_norm = -1.0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double nj = r.col(j).norm();
            if (nj > best_norm) { best_norm = nj; best = j; }
        }
        if (best < 0 || best_norm <= 0.0)
            throw std::runtime_error("select_columns: ran out of independent columns");
        used[best] = true;
        chosen.push_back(best);
        Eigen::VectorXd q = r.col(best) / best_norm;
        for (int j = 0; j < n; ++j)
            if (!used[j]) r.col(j) -= q * (q.dot(r.col(j)));
    }
    std::sort(chosen.begin(), chosen.end());

    Eigen::MatrixXd sub(k, l);
    for (int c = 0; c < l; ++c) sub.col(c) = a.col(chosen[c]);
    Eigen::VectorXd ssv = singular_values(sub);

    ColumnSelection sel;
    sel.indices = std::move(chosen);
    sel.sigma_l = ssv(l - 1);
    sel.rhs = 0.0;
    // Tail sums sum_{i>=r} sigma_i(A)^2 with sigma_i = 0 beyond rank.
    std::vector<double> tail(k + 2, 0.0);
    for (int i = k; i >= 1; --i) tail[i] = tail[i + 1] + sv(i - 1) * sv(i - 1);
    for (int r2 = l + 1; r2 <= k; ++r2) {
        const double v = std::sqrt(double(r2 - l) * tail[r2] / (double(n) * double(r2)));
        sel.rhs = std::max(sel.rhs, v);
    }
    return sel;
}

} // namespace rgl
