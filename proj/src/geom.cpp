#include "sightcone/geom.hpp"

#include <cmath>

namespace sightcone {

OrthoMap::OrthoMap(Mat m, const Tolerance& tol) : matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
        throw DegenerateInput("OrthoMap: matrix must be square");
    double defect = orthogonality_defect(matrix);
    if (defect > 1e3 * tol.eps_abs)
        throw DegenerateInput("OrthoMap: matrix is not orthogonal, defect " +
                              std::to_string(defect));
}

double orthogonality_defect(const Mat& m) {
    Mat g = m.transpose() * m;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

Vec unit(const Vec& v, const Tolerance& tol) {
    double n = v.norm();
    if (n <= tol.eps_abs)
        throw DegenerateDirection("unit: vector norm " + std::to_string(n));
    return v / n;
}

Vec ray_second_intersection(const Vec& z, const Vec& u, double r,
                            const Tolerance& tol) {
    if (r <= 0) throw DegenerateInput("ray_second_intersection: r must be positive");
    double un = u.norm();
    if (un <= tol.eps_abs)
        throw DegenerateDirection("ray_second_intersection: zero direction");
    if (std::abs(z.norm() - r) > tol.len_eps(r))
        throw DegenerateInput("ray_second_intersection: z not on the sphere");
    double zu = z.dot(u);
    if (zu >= -tol.eps_abs * un * r)
        throw NoSecondHit("ray_second_intersection: ray does not re-enter the ball");
    // |z + t u|^2 = r^2 with |z| = r gives t (t |u|^2 + 2 z.u) = 0.
    double t = -2.0 * zu / (un * un);
    return z + t * u;
}

std::pair<OrthoMap, double>
orthogonal_fit(const std::vector<std::pair<Vec, Vec>>& pairs) {
    if (pairs.empty()) throw DegenerateInput("orthogonal_fit: no pairs");
    const int d = static_cast<int>(pairs.front().first.size());
    Mat cross = Mat::Zero(d, d);
    for (const auto& [u, w] : pairs) {
        if (u.size() != d || w.size() != d)
            throw DegenerateInput("orthogonal_fit: inconsistent dimensions");
        cross += w * u.transpose();
    }
    // Argmax over O(d) of trace(M^T sum w u^T) is U V^T from the SVD of the
    // cross-covariance; no determinant correction since reflections count.
    Eigen::JacobiSVD<Mat> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat m = svd.matrixU() * svd.matrixV().transpose();
    double ss = 0.0;
    for (const auto& [u, w] : pairs) ss += (m * u - w).squaredNorm();
    double rms = std::sqrt(ss / static_cast<double>(pairs.size()));
    return {OrthoMap(std::move(m)), rms};
}

Mat gram_matrix(const std::vector<Vec>& dirs) {
    if (dirs.empty()) throw DegenerateInput("gram_matrix: empty input");
    const int k = static_cast<int>(dirs.size());
    Mat g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            g(i, j) = g(j, i) = dirs[i].dot(dirs[j]);
    return g;
}

} // namespace sightcone
