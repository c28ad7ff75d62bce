#ifndef SIGHTCONE_GEOM_HPP
#define SIGHTCONE_GEOM_HPP

#include "sightcone/errors.hpp"
#include "sightcone/tolerance.hpp"

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace sightcone {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Element of O(d); reflections admitted (det -1 is fine).
struct OrthoMap {
    Mat matrix;

    OrthoMap() = default;
    explicit OrthoMap(Mat m, const Tolerance& tol = {});

    int dim() const { return static_cast<int>(matrix.rows()); }
    double det() const { return matrix.determinant(); }
    Vec apply(const Vec& v) const { return matrix * v; }

    static OrthoMap identity(int d) { return OrthoMap(Mat::Identity(d, d)); }
};

/// Max-norm deviation of M from orthogonality, ||M^T M - I||_max.
double orthogonality_defect(const Mat& m);

/// Normalize; throws DegenerateDirection when |v| <= tol.eps_abs.
Vec unit(const Vec& v, const Tolerance& tol = {});

/// Second intersection of the ray z + t*u (t > 0) with the origin-centered
/// sphere of radius r, for z on that sphere. The ray must re-enter the ball
/// (u.z < 0), otherwise NoSecondHit.
Vec ray_second_intersection(const Vec& z, const Vec& u, double r,
                            const Tolerance& tol = {});

/// Best orthogonal matrix M minimizing sum |M*u_i - w_i|^2 over O(d)
/// for pairs (u_i, w_i), plus the achieved RMS residual.
std::pair<OrthoMap, double>
orthogonal_fit(const std::vector<std::pair<Vec, Vec>>& pairs);

/// Pairwise dot products G[i][j] = D[i].D[j]; invariant under O(d).
Mat gram_matrix(const std::vector<Vec>& dirs);

} // namespace sightcone

#endif
