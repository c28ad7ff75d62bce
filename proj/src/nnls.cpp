#include "sightcone/nnls.hpp"

#include <cmath>
#include <limits>

namespace sightcone {

NnlsResult nnls(const Mat& A, const Vec& b, int max_iter) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (max_iter <= 0) max_iter = 3 * n + 30;

    Vec x = Vec::Zero(n);
    std::vector<bool> passive(n, false);
    Vec w = A.transpose() * b;  // dual/gradient at x = 0

    const double scale = std::max(1.0, b.norm()) * std::max(1.0, A.size() ? A.cwiseAbs().maxCoeff() : 1.0);
    const double gtol = 1e-12 * scale;

    auto solve_passive = [&](std::vector<int>& idx) -> Vec {
        idx.clear();
        for (int j = 0; j < n; ++j)
            if (passive[j]) idx.push_back(j);
        Mat Ap(m, static_cast<int>(idx.size()));
        for (int c = 0; c < static_cast<int>(idx.size()); ++c)
            Ap.col(c) = A.col(idx[c]);
        return Ap.colPivHouseholderQr().solve(b);
    };

    int outer = 0;
    while (outer++ < max_iter) {
        int best = -1;
        double bestw = gtol;
        for (int j = 0; j < n; ++j)
            if (!passive[j] && w[j] > bestw) { bestw = w[j]; best = j; }
        if (best < 0) break;
        passive[best] = true;

        for (;;) {
            std::vector<int> idx;
            Vec zp = solve_passive(idx);
            if (idx.empty()) break;

            bool all_pos = true;
            for (int c = 0; c < zp.size(); ++c)
                if (zp[c] <= 0) { all_pos = false; break; }
            if (all_pos) {
                x.setZero();
                for (int c = 0; c < zp.size(); ++c) x[idx[c]] = zp[c];
                break;
            }
            // Step x -> x + alpha (z - x), the longest feasible sub-step.
            double alpha = std::numeric_limits<double>::infinity();
            for (int c = 0; c < zp.size(); ++c) {
                if (zp[c] <= 0) {
                    double xc = x[idx[c]];
                    double a = xc / (xc - zp[c]);
                    if (a < alpha) alpha = a;
                }
            }
            if (!(alpha >= 0) || !std::isfinite(alpha)) alpha = 0.0;
            bool any = false;
            for (int c = 0; c < static_cast<int>(idx.size()); ++c) {
                int j = idx[c];
                double nx = x[j] + alpha * (zp[c] - x[j]);
                if (nx <= 1e-13 * scale) {
                    x[j] = 0.0;
                    passive[j] = false;
                } else {
                    x[j] = nx;
                    any = true;
                }
            }
            if (!any) break;
        }
        w = A.transpose() * (b - A * x);
    }
    return {x, (A * x - b).norm()};
}

bool in_conical_hull(const Vec& target, const std::vector<Vec>& gens,
                     double tol) {
    if (gens.empty()) return target.norm() <= tol;
    const int d = static_cast<int>(target.size());
    Mat A(d, static_cast<int>(gens.size()));
    for (int j = 0; j < static_cast<int>(gens.size()); ++j) A.col(j) = gens[j];
    return nnls(A, target).residual <= tol;
}

bool in_convex_hull(const Vec& target, const std::vector<Vec>& points,
                    double tol) {
    if (points.empty()) return false;
    const int d = static_cast<int>(target.size());
    Mat A(d + 1, static_cast<int>(points.size()));
    for (int j = 0; j < static_cast<int>(points.size()); ++j) {
        A.col(j).head(d) = points[j];
        A(d, j) = 1.0;
    }
    Vec b(d + 1);
    b.head(d) = target;
    b[d] = 1.0;
    return nnls(A, b).residual <= tol;
}

} // namespace sightcone
