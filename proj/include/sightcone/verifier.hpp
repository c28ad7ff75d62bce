#ifndef SIGHTCONE_VERIFIER_HPP
#define SIGHTCONE_VERIFIER_HPP

#include "sightcone/arrangement.hpp"
#include "sightcone/congruence.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sightcone {

enum class VerifyMode { Cones, Projections };
enum class VerdictKind { Equal, Distinct, Inconclusive };

/// Per-region outcome attached to a verdict: the visibility class, the
/// congruence residual at its representative, and the stable vertex
/// permutation once confirmed.
struct RegionSummary {
    SignVector signs;
    std::optional<std::vector<int>> permutation;
    double residual = 0.0;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<Vec> witness;   // light source where congruence fails
    std::vector<RegionSummary> regions;
    double max_residual = 0.0;
    std::string note;
};

/// Angle of sight of a segment from a point z on a circle in a 2-plane;
/// z is given in plane coordinates.
struct AngleSample {
    Vec z;
    double alpha = 0.0;
};

struct EdgeMatch {
    std::pair<int, int> p_edge;
    std::pair<int, int> q_edge;
    double deviation = 0.0;
};

struct EqualityReport {
    bool equal = false;
    std::vector<EdgeMatch> matched;
    double max_deviation = 0.0;
    int edges_total = 0;
    bool full_coverage = false;
    std::vector<RegionReport> regions;  // stable_permutation filled
    std::string note;
};

struct CounterexampleReport {
    double radius_s1 = 0.0;
    double radius_s2 = 0.0;
    bool circles_congruent = false;
    ConeShape c1;
    ConeShape c2;
    bool cones_congruent = false;
};

/// Samples light sources on the sphere of radius r (region representatives
/// first, then extra seeded points), checks congruence of the two bodies'
/// cones or projections at each, and confirms a passing run by the
/// vertex-level equality decision. Distinct always carries the first
/// failing z. All internal errors fold into Inconclusive; the sample count
/// escalates to 5000 once before giving up.
Verdict verify_pair(const Polytope& P, const Polytope& Q, double r,
                    VerifyMode mode, int n_samples = 500,
                    std::uint64_t seed = 0, const Tolerance& tol = {});

/// Two-pole procedure for balls: compares the projected caps at both poles
/// of the line through the centers (any diameter when they coincide).
Verdict verify_balls(const Ball& K, const Ball& L, double r,
                     const Tolerance& tol = {});

/// The direction permutation accepted by cone_congruent at the region's
/// representative, required to repeat identically at n_probe further
/// samples inside the sign class. Throws UnstableRegion when the accepted
/// permutation varies or congruence degrades inside the class.
std::optional<std::vector<int>> edge_correspondence(
    const Polytope& P, const Polytope& Q, double r, const RegionReport& region,
    int n_probe = 20, std::uint64_t seed = 0, const Tolerance& tol = {});

/// Vertex-level equality decision: silhouette edges of P are matched to
/// edges of Q through stable region correspondences until every edge of P
/// is covered; endpoints must coincide within 1e-7 * r.
EqualityReport decide_equality(const Polytope& P, const Polytope& Q, double r,
                               std::uint64_t seed = 0, int n_samples = 2000,
                               const Tolerance& tol = {});

/// Sum of squared differences between the sampled angles and the angles
/// subtended by the segment xy (2-plane coordinates), and its gradient in
/// (x1, x2, y1, y2).
double recover_objective(const std::vector<AngleSample>& samples, const Vec& x,
                         const Vec& y);
Vec recover_gradient(const std::vector<AngleSample>& samples, const Vec& x,
                     const Vec& y);

/// Recovers the unordered endpoint pair {x, y} inside the disk of radius r
/// from angle samples on its boundary circle, by damped least squares with
/// seeded multistarts. Plane coordinates in, plane coordinates out.
std::pair<Vec, Vec> recover_segment(const std::vector<AngleSample>& samples,
                                    double r, std::uint64_t seed = 0,
                                    const Tolerance& tol = {});

/// Same, with the 2-plane embedded by an orthonormal d x 2 basis; the
/// returned endpoints are lifted back to ambient coordinates.
std::pair<Vec, Vec> recover_segment(const std::vector<AngleSample>& samples,
                                    const Mat& basis, double r,
                                    std::uint64_t seed = 0,
                                    const Tolerance& tol = {});

/// Self-contained fixture: two congruent circles on a sphere whose cones
/// from the same exterior point are one circular, one elliptical, hence
/// not congruent.
CounterexampleReport counterexample_report(const Tolerance& tol = {});

} // namespace sightcone

#endif
