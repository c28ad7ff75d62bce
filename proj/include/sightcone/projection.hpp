#ifndef SIGHTCONE_PROJECTION_HPP
#define SIGHTCONE_PROJECTION_HPP

#include "sightcone/cone.hpp"

#include <utility>
#include <vector>

namespace sightcone {

/// Boundary arc of a spherical polytope between vertices i and j, lying on
/// the circle cut from the sphere by the plane through the source point and
/// the two polytope vertices.
struct Arc {
    int i = 0;
    int j = 0;
    Vec circle_center;
    double circle_radius = 0.0;
};

/// Central projection of a polytope onto the enclosing sphere, seen from a
/// sphere point: vertex images plus the circle data of the boundary arcs.
/// Vertex order matches the support cone's canonical order.
struct SphericalPolytope {
    double r = 1.0;
    std::vector<Vec> vertices;
    std::vector<Arc> arcs;
    Vec source_apex;
};

/// Cap on the sphere of radius r: unit center direction and angular radius.
struct SphericalCap {
    Vec center_dir;
    double angular_radius = 0.0;
};

SphericalPolytope spherical_projection(const Vec& z, const Polytope& P,
                                       double r, const Tolerance& tol = {});

/// Circle cut from the sphere |p| = r by the plane through z, x, y:
/// center is the foot of the perpendicular from the origin to that plane.
std::pair<Vec, double> arc_circle(const Vec& z, const Vec& x, const Vec& y,
                                  double r, const Tolerance& tol = {});

/// Angle at z subtended by the segment endpoints x and y, in [0, pi).
/// Collinear-with-z configurations give 0 outside the segment and throw
/// InteriorPoint inside it.
double angle(const Vec& z, const Vec& x, const Vec& y,
             const Tolerance& tol = {});

/// Projection of a ball as a spherical cap. The cap center lies on the
/// great circle through z and the ball center, on the far side of the ball.
SphericalCap ball_cap(const Vec& z, const Ball& B, double r,
                      const Tolerance& tol = {});

/// Points subdividing the projection arc from p to q (both on the sphere)
/// as seen from z; n_segments chords of the segment pq are re-projected, so
/// the polyline has n_segments + 1 points with exact endpoints.
std::vector<Vec> arc_polyline(const Vec& z, const Vec& p, const Vec& q,
                              double r, int n_segments,
                              const Tolerance& tol = {});

} // namespace sightcone

#endif
