#ifndef SIGHTCONE_POLYTOPE_HPP
#define SIGHTCONE_POLYTOPE_HPP

#include "sightcone/geom.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace sightcone {

/// Supporting hyperplane {x : normal.x = offset} with unit outward normal;
/// the body satisfies normal.x <= offset.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;

    double eval(const Vec& x) const { return normal.dot(x) - offset; }
};

struct Facet {
    Hyperplane plane;
    std::vector<int> vertex_ids;  // sorted ascending
};

/// Full-dimensional convex polytope: extreme points only, facets with
/// outward unit normals, 1-faces as vertex-id pairs. Vertices are stored
/// in lexicographic order so downstream permutations are reproducible.
struct Polytope {
    int dim = 0;
    std::vector<Vec> vertices;
    std::vector<Facet> facets;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted

    double max_vertex_norm() const;
    bool contains(const Vec& x, double eps) const;  // all facet evals <= eps
};

struct Ball {
    Vec center;
    double radius = 0.0;
};

/// Enclosing sphere of radius r plus the bodies strictly inside it.
struct Scene {
    double r = 1.0;
    std::vector<Polytope> polytopes;
    std::vector<Ball> balls;
};

/// Hull of the input point set. The result's vertex set is exactly the
/// extreme points of the input; throws DegenerateInput when the points do
/// not affinely span dimension d. Coplanar simplicial facets are merged so
/// facet planes are unique.
Polytope convex_hull(const std::vector<Vec>& points, int d,
                     const Tolerance& tol = {});

std::vector<Hyperplane> facet_planes(const Polytope& P);

/// Facet ids with z strictly on the outer side (plane.eval(z) > eps).
/// Throws RegionBoundary when z lies on some facet plane within eps, and
/// InsidePolytope when no facet is visible.
std::vector<int> visible_facets(const Vec& z, const Polytope& P,
                                const Tolerance& tol = {});

/// Hull of n_points seeded-uniform points in the ball of radius radius_cap;
/// deterministic per seed, redrawing degenerate samples.
Polytope random_polytope(std::uint64_t seed, int d, int n_points,
                         double radius_cap, const Tolerance& tol = {});

/// Checks all Polytope invariants; throws DegenerateInput on violation.
void validate_polytope(const Polytope& P, const Tolerance& tol = {});

/// Interior-containment margin is 1e-6 * r for every body.
void validate_scene(const Scene& scene, const Tolerance& tol = {});

Polytope translated(const Polytope& P, const Vec& t, const Tolerance& tol = {});
Polytope transformed(const Polytope& P, const Mat& R, const Tolerance& tol = {});

/// Setwise equality of vertex sets within eps (greedy nearest matching).
bool same_vertex_set(const Polytope& P, const Polytope& Q, double eps);

} // namespace sightcone

#endif
