#include "sightcone/projection.hpp"

#include <algorithm>
#include <cmath>

namespace sightcone {

namespace {

void require_on_sphere(const Vec& z, double r, const Tolerance& tol,
                       const char* who) {
    if (r <= 0.0) throw DegenerateInput(std::string(who) + ": nonpositive radius");
    if (std::abs(z.norm() - r) > tol.len_eps(r))
        throw DegenerateInput(std::string(who) + ": source point not on the sphere");
}

} // namespace

SphericalPolytope spherical_projection(const Vec& z, const Polytope& P,
                                       double r, const Tolerance& tol) {
    require_on_sphere(z, r, tol, "spherical_projection");
    SupportCone cone = support_cone(z, P, tol);

    SphericalPolytope S;
    S.r = r;
    S.source_apex = z;
    for (const auto& u : cone.directions)
        S.vertices.push_back(ray_second_intersection(z, u, r, tol));
    for (const auto& [i, j] : cone.faces2) {
        auto [center, radius] = arc_circle(z, S.vertices[i], S.vertices[j], r, tol);
        S.arcs.push_back(Arc{i, j, center, radius});
    }
    for (const auto& p : S.vertices)
        if ((p - z).norm() <= tol.len_eps(r))
            throw DegenerateInput("spherical_projection: vertex image touches the source point");
    return S;
}

std::pair<Vec, double> arc_circle(const Vec& z, const Vec& x, const Vec& y,
                                  double r, const Tolerance& tol) {
    require_on_sphere(z, r, tol, "arc_circle");
    const int d = static_cast<int>(z.size());
    Mat A(d, 2);
    A.col(0) = x - z;
    A.col(1) = y - z;
    const double scale = std::max({1.0, A.col(0).norm(), A.col(1).norm()});
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()[1] <= tol.len_eps(scale))
        throw CollinearPoints("arc_circle: z, x, y are collinear");

    // Foot of the perpendicular from the origin to the plane z + span(A).
    Vec mu = svd.solve(-z);
    Vec center = z + A * mu;
    double dist2 = center.squaredNorm();
    if (dist2 >= r * r) throw CollinearPoints("arc_circle: plane misses the sphere interior");
    double radius = std::sqrt(r * r - dist2);
    return {center, radius};
}

double angle(const Vec& z, const Vec& x, const Vec& y, const Tolerance& tol) {
    Vec a = x - z, b = y - z;
    const double na = a.norm(), nb = b.norm();
    const double scale = std::max({1.0, x.norm(), y.norm(), z.norm()});
    if (na <= tol.len_eps(scale) || nb <= tol.len_eps(scale))
        throw DegenerateVertex("angle: z coincides with a segment endpoint");
    double c = a.dot(b) / (na * nb);
    if (c <= -1.0 + 1e-14) throw InteriorPoint("angle: z lies inside the segment");
    if (c >= 1.0 - 1e-14) return 0.0;
    return std::acos(c);
}

SphericalCap ball_cap(const Vec& z, const Ball& B, double r,
                      const Tolerance& tol) {
    require_on_sphere(z, r, tol, "ball_cap");
    if (z.size() != B.center.size())
        throw DegenerateInput("ball_cap: dimension mismatch");
    if (B.radius <= 0.0) throw DegenerateInput("ball_cap: nonpositive ball radius");
    if (B.center.norm() + B.radius >= r)
        throw DegenerateInput("ball_cap: ball not strictly inside the sphere");
    Vec off = B.center - z;
    const double dist = off.norm();
    if (dist <= B.radius * (1.0 + tol.eps_rel))
        throw InteriorPoint("ball_cap: source point inside the ball");

    Vec a = off / dist;
    const double theta = std::asin(std::min(1.0, B.radius / dist));

    // Unit vector orthogonal to the axis inside the plane through the
    // origin, z and the ball center; any orthogonal direction works when
    // the three are collinear.
    Vec w = z - z.dot(a) * a;
    if (w.norm() <= tol.len_eps(r)) {
        int k = 0;
        for (int i = 1; i < a.size(); ++i)
            if (std::abs(a[i]) < std::abs(a[k])) k = i;
        w = Vec::Zero(a.size());
        w[k] = 1.0;
        w -= w.dot(a) * a;
    }
    w.normalize();

    Vec p_plus = ray_second_intersection(z, std::cos(theta) * a + std::sin(theta) * w, r, tol);
    Vec p_minus = ray_second_intersection(z, std::cos(theta) * a - std::sin(theta) * w, r, tol);
    Vec far_point = ray_second_intersection(z, a, r, tol);

    Vec m = p_plus + p_minus;
    if (m.norm() <= tol.len_eps(r)) {
        m = far_point / r;
    } else {
        m.normalize();
        if (m.dot(far_point) < 0) m = -m;
    }
    double c = std::clamp(m.dot(p_plus) / r, -1.0, 1.0);
    SphericalCap cap{m, std::acos(c)};
    if (cap.angular_radius <= 0.0 || cap.angular_radius >= std::acos(-1.0))
        throw DegenerateInput("ball_cap: degenerate cap");
    return cap;
}

std::vector<Vec> arc_polyline(const Vec& z, const Vec& p, const Vec& q,
                              double r, int n_segments, const Tolerance& tol) {
    require_on_sphere(z, r, tol, "arc_polyline");
    if (n_segments < 1) throw DegenerateInput("arc_polyline: need at least one segment");
    std::vector<Vec> pts;
    pts.reserve(n_segments + 1);
    pts.push_back(p);
    for (int k = 1; k < n_segments; ++k) {
        double t = static_cast<double>(k) / n_segments;
        Vec u = (1.0 - t) * (p - z) + t * (q - z);
        pts.push_back(ray_second_intersection(z, u, r, tol));
    }
    pts.push_back(q);
    return pts;
}

} // namespace sightcone
