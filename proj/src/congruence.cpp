#include "sightcone/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace sightcone {

namespace {

constexpr long kNodeBudget = 100000;

/// Sorted row of a Gram matrix, the permutation-invariant fingerprint used
/// to prune candidate assignments.
std::vector<double> sorted_row(const Mat& G, int i) {
    std::vector<double> row(G.cols());
    for (int j = 0; j < G.cols(); ++j) row[j] = G(i, j);
    std::sort(row.begin(), row.end());
    return row;
}

bool rows_compatible(const std::vector<double>& a, const std::vector<double>& b,
                     double eps) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > eps) return false;
    return true;
}

std::set<std::pair<int, int>> edge_set(const std::vector<std::pair<int, int>>& e) {
    std::set<std::pair<int, int>> s;
    for (auto [a, b] : e) s.emplace(std::min(a, b), std::max(a, b));
    return s;
}

std::optional<CongruenceWitness> certify(const std::vector<Vec>& d1,
                                         const std::vector<Vec>& d2,
                                         const std::vector<std::vector<int>>& perms,
                                         const Tolerance& tol,
                                         const std::function<bool(const std::vector<int>&)>& accept) {
    for (const auto& sigma : perms) {
        std::vector<std::pair<Vec, Vec>> pairs;
        pairs.reserve(d1.size());
        for (std::size_t i = 0; i < d1.size(); ++i)
            pairs.emplace_back(d1[i], d2[sigma[i]]);
        auto [map, residual] = orthogonal_fit(pairs);
        if (residual > tol.residual_max) continue;
        if (!accept(sigma)) continue;
        return CongruenceWitness{sigma, std::move(map), residual};
    }
    return std::nullopt;
}

} // namespace

std::vector<std::vector<int>> match_by_gram(const std::vector<Vec>& d1,
                                            const std::vector<Vec>& d2,
                                            const Tolerance& tol) {
    if (d1.size() != d2.size()) return {};
    const int k = static_cast<int>(d1.size());
    const Mat G1 = gram_matrix(d1), G2 = gram_matrix(d2);
    const double eps = tol.residual_max;

    std::vector<std::vector<double>> rows1(k), rows2(k);
    for (int i = 0; i < k; ++i) {
        rows1[i] = sorted_row(G1, i);
        rows2[i] = sorted_row(G2, i);
    }

    std::vector<std::vector<int>> out;
    std::vector<int> sigma(k, -1);
    std::vector<bool> used(k, false);
    long nodes = 0;

    auto rec = [&](auto&& self, int i) -> void {
        if (i == k) {
            out.push_back(sigma);
            return;
        }
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            if (++nodes > kNodeBudget)
                throw SearchBudgetExceeded("match_by_gram: node budget exhausted");
            if (!rows_compatible(rows1[i], rows2[j], eps)) continue;
            bool ok = true;
            for (int p = 0; p < i; ++p) {
                if (std::abs(G1(i, p) - G2(j, sigma[p])) > eps) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            sigma[i] = j;
            used[j] = true;
            self(self, i + 1);
            used[j] = false;
            sigma[i] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

std::optional<CongruenceWitness> cone_congruent(const SupportCone& A,
                                                const SupportCone& B,
                                                const Tolerance& tol) {
    if (A.dim() != B.dim())
        throw DegenerateInput("cone_congruent: dimension mismatch");
    const double scale = std::max({1.0, A.apex.norm(), B.apex.norm()});
    if ((A.apex - B.apex).norm() > tol.len_eps(scale))
        throw ApexMismatch("cone_congruent: apexes differ");
    if (A.spanning_count() != B.spanning_count()) return std::nullopt;
    if (A.faces2.size() != B.faces2.size()) return std::nullopt;

    auto perms = match_by_gram(A.directions, B.directions, tol);
    const auto b_edges = edge_set(B.faces2);
    return certify(A.directions, B.directions, perms, tol,
                   [&](const std::vector<int>& sigma) {
                       std::set<std::pair<int, int>> image;
                       for (auto [i, j] : A.faces2) {
                           int a = sigma[i], b = sigma[j];
                           image.emplace(std::min(a, b), std::max(a, b));
                       }
                       return image == b_edges;
                   });
}

std::optional<CongruenceWitness> spherical_congruent(const SphericalPolytope& S1,
                                                     const SphericalPolytope& S2,
                                                     const Tolerance& tol) {
    const double r = std::max(S1.r, S2.r);
    if (std::abs(S1.r - S2.r) > tol.len_eps(std::max(1.0, r)))
        throw RadiusMismatch("spherical_congruent: sphere radii differ");
    if (S1.vertices.size() != S2.vertices.size()) return std::nullopt;
    if (S1.arcs.size() != S2.arcs.size()) return std::nullopt;

    std::vector<Vec> u1, u2;
    for (const auto& v : S1.vertices) u1.push_back(v / S1.r);
    for (const auto& v : S2.vertices) u2.push_back(v / S2.r);

    // Arc circle radii keyed by endpoint pair, for the matched-arcs check.
    std::map<std::pair<int, int>, double> radii2;
    for (const auto& a : S2.arcs)
        radii2[{std::min(a.i, a.j), std::max(a.i, a.j)}] = a.circle_radius;
    const double radius_eps = tol.residual_max * std::max(1.0, r);

    auto perms = match_by_gram(u1, u2, tol);
    return certify(u1, u2, perms, tol, [&](const std::vector<int>& sigma) {
        for (const auto& a : S1.arcs) {
            int i = sigma[a.i], j = sigma[a.j];
            auto it = radii2.find({std::min(i, j), std::max(i, j)});
            if (it == radii2.end()) return false;
            if (std::abs(it->second - a.circle_radius) > radius_eps) return false;
        }
        return true;
    });
}

ConeShape cone_shape_classify(const std::vector<Vec>& directions,
                              const Tolerance& tol) {
    if (directions.empty() || directions.front().size() != 3)
        throw DegenerateInput("cone_shape_classify: three-dimensional directions required");
    if (directions.size() < 6)
        throw DegenerateInput("cone_shape_classify: need at least 6 directions");

    // Homogeneous quadratic u' Q u = 0 on unit samples; coefficient vector
    // (Qxx, Qyy, Qzz, Qxy, Qxz, Qyz) is the null direction of the
    // constraint matrix.
    const int n = static_cast<int>(directions.size());
    Mat C(n, 6);
    for (int s = 0; s < n; ++s) {
        Vec u = directions[s].normalized();
        C.row(s) << u[0] * u[0], u[1] * u[1], u[2] * u[2], 2 * u[0] * u[1],
            2 * u[0] * u[2], 2 * u[1] * u[2];
    }
    Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv[5] > 1e-7 * std::max(1.0, sv[0]))
        throw FitFailed("cone_shape_classify: samples do not lie on a quadratic cone");
    if (sv[4] <= 1e-7 * std::max(1.0, sv[0]))
        throw FitFailed("cone_shape_classify: quadratic form underdetermined");
    Vec q = svd.matrixV().col(5);

    Mat Q(3, 3);
    Q << q[0], q[3], q[4], q[3], q[1], q[5], q[4], q[5], q[2];
    Eigen::SelfAdjointEigenSolver<Mat> eig(Q);
    Vec ev = eig.eigenvalues();  // ascending
    const double ev_eps = 1e-9 * ev.cwiseAbs().maxCoeff();

    int pos = 0, neg = 0;
    for (int i = 0; i < 3; ++i) {
        if (ev[i] > ev_eps) ++pos;
        else if (ev[i] < -ev_eps) ++neg;
    }
    if (neg == 2 && pos == 1) {
        ev = -ev.reverse().eval();
        std::swap(pos, neg);
    }
    if (pos != 2 || neg != 1) return ConeShape{ConeShapeKind::Other, 1.0};

    // Section by a plane orthogonal to the negative eigenvector: semi-axes
    // scale as 1/sqrt(lambda), so the ratio is sqrt(lambda_max/lambda_min)
    // over the positive pair ev[1] <= ev[2].
    double ratio = std::sqrt(ev[2] / ev[1]);
    const double circ_eps = std::max(1e-6, 10.0 * tol.residual_max);
    ConeShapeKind kind = (ratio - 1.0 <= circ_eps) ? ConeShapeKind::Circular
                                                   : ConeShapeKind::Elliptical;
    return ConeShape{kind, ratio};
}

} // namespace sightcone
