#ifndef SIGHTCONE_CONGRUENCE_HPP
#define SIGHTCONE_CONGRUENCE_HPP

#include "sightcone/cone.hpp"
#include "sightcone/projection.hpp"

#include <optional>
#include <vector>

namespace sightcone {

/// Certificate of congruence: permutation sigma matching item i of the
/// first object to item sigma[i] of the second, the orthogonal map
/// realizing it, and the RMS residual of the fit.
struct CongruenceWitness {
    std::vector<int> permutation;
    OrthoMap map;
    double residual = 0.0;
};

enum class ConeShapeKind { Circular, Elliptical, Other };

struct ConeShape {
    ConeShapeKind kind = ConeShapeKind::Other;
    double axis_ratio = 1.0;  // >= 1; semi-axis ratio of the cross-section
};

/// All permutations sigma with G(d1) = G(d2) conjugated by sigma within
/// tolerance, found by backtracking with row-multiset pruning. Throws
/// SearchBudgetExceeded past 1e5 search nodes.
std::vector<std::vector<int>> match_by_gram(const std::vector<Vec>& d1,
                                            const std::vector<Vec>& d2,
                                            const Tolerance& tol = {});

/// Congruence of two shared-apex support cones under O(d): the witness map
/// sends direction i of A to direction sigma[i] of B and preserves the
/// 2-face adjacency. Throws ApexMismatch when the apexes differ.
std::optional<CongruenceWitness> cone_congruent(const SupportCone& A,
                                                const SupportCone& B,
                                                const Tolerance& tol = {});

/// Congruence of two spherical polytopes under origin-centered O(d):
/// vertices map setwise onto vertices and every arc maps to an arc with the
/// same endpoints and equal circle radius. The source points need not
/// correspond. Throws RadiusMismatch when the sphere radii differ.
std::optional<CongruenceWitness> spherical_congruent(const SphericalPolytope& S1,
                                                     const SphericalPolytope& S2,
                                                     const Tolerance& tol = {});

/// Classifies the quadratic cone through >= 6 apex-relative boundary
/// directions (d=3): fits the homogeneous form, requires signature (2,1),
/// and reads the cross-section semi-axis ratio off the positive eigenvalue
/// pair. Throws FitFailed when the samples are not conical.
ConeShape cone_shape_classify(const std::vector<Vec>& directions,
                              const Tolerance& tol = {});

} // namespace sightcone

#endif
