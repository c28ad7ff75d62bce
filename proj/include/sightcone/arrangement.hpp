#ifndef SIGHTCONE_ARRANGEMENT_HPP
#define SIGHTCONE_ARRANGEMENT_HPP

#include "sightcone/polytope.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sightcone {

/// Visibility fingerprint of a sphere point: one sign per facet plane of
/// every polytope in the scene, in scene order. Entries are +1 or -1, never
/// 0 (points too close to a plane are rejected).
using SignVector = std::vector<std::int8_t>;

std::string sign_string(const SignVector& s);

/// One discovered sign class and its first witness on the sphere. The
/// stable_permutation slot is filled by the verifier once a matching
/// permutation has been confirmed across the class.
struct RegionReport {
    SignVector sign_vector;
    Vec representative;
    int sample_count = 0;
    std::optional<std::vector<int>> stable_permutation;
};

/// Point with x1 = r cos a1, x2 = r sin a1 cos a2, ...,
/// x_d = r sin a1 ... sin a_{d-1}; d = angles.size() + 1.
/// Leading angles must lie in [0, pi], the last in [0, 2 pi].
Vec hyperspherical_point(const std::vector<double>& angles, double r);

/// Signs of plane.eval(z) over the given planes; throws OnPlane when some
/// |eval| <= eps.
SignVector sign_vector(const Vec& z, const std::vector<Hyperplane>& planes,
                       double eps);
SignVector sign_vector(const Vec& z, const std::vector<Hyperplane>& planes,
                       const Tolerance& tol = {});

/// All facet planes of the scene's polytopes, concatenated in scene order.
std::vector<Hyperplane> scene_planes(const Scene& scene);

/// Deterministic sphere samples; indices form a prefix-stable sequence, so
/// the first m of n samples never depend on n. d=3 uses a golden-angle
/// lattice with a seeded offset, other dimensions seeded uniform points.
std::vector<Vec> sphere_samples(int n, int dim, double r, std::uint64_t seed);

/// Samples the sphere and buckets accepted points by sign vector. Reports
/// appear in discovery order; the representative is the first accepted
/// sample of its class. Samples within 1e-7 * r of any plane are discarded.
std::vector<RegionReport> sample_regions(const Scene& scene, int n_samples,
                                         std::uint64_t seed,
                                         const Tolerance& tol = {});

} // namespace sightcone

#endif
