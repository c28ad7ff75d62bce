#ifndef SIGHTCONE_CONE_HPP
#define SIGHTCONE_CONE_HPP

#include "sightcone/polytope.hpp"

#include <vector>

namespace sightcone {

/// Support cone of a polytope from an exterior point: unit spanning
/// directions (extreme rays), the shadow-boundary vertex ids they pass
/// through, and the cone's 2-face adjacency as direction-index pairs.
///
/// Canonical order: for d=3 the silhouette cycle counterclockwise as seen
/// from the apex, starting at the lexicographically smallest boundary
/// vertex; for d>3 lexicographic by boundary vertex.
struct SupportCone {
    Vec apex;
    std::vector<Vec> directions;
    std::vector<int> boundary_vertex_ids;
    std::vector<std::pair<int, int>> faces2;

    int dim() const { return static_cast<int>(apex.size()); }
    int spanning_count() const { return static_cast<int>(directions.size()); }
};

/// Visibility method: shadow-boundary candidates are vertices incident to
/// both a visible and an invisible facet; a cross-section hull drops flat
/// vertices and yields the 2-face structure.
SupportCone support_cone(const Vec& z, const Polytope& P,
                         const Tolerance& tol = {});

/// Vertex ids whose spanning directions are the cone's extreme rays.
std::vector<int> shadow_boundary(const Vec& z, const Polytope& P,
                                 const Tolerance& tol = {});

/// Independent route: extreme directions among all vertex directions by
/// conical-hull feasibility alone, no facet visibility. Returned unsorted.
std::vector<Vec> spanning_directions_extremal(const Vec& z, const Polytope& P,
                                              const Tolerance& tol = {});

/// True when the two direction sets coincide setwise within eps.
bool same_direction_set(const std::vector<Vec>& a, const std::vector<Vec>& b,
                        double eps);

} // namespace sightcone

#endif
