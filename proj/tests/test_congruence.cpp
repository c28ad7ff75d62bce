#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sightcone/congruence.hpp"
#include "sightcone/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace sightcone;

namespace {

Vec v3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

Polytope cube(double h) {
    std::vector<Vec> pts;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) pts.push_back(v3(sx * h, sy * h, sz * h));
    return convex_hull(pts, 3);
}

SupportCone mapped_cone(const SupportCone& c, const Mat& R) {
    SupportCone out = c;
    for (auto& u : out.directions) u = R * u;
    return out;
}

Vec sphere_point_off_planes(std::mt19937_64& rng, const Polytope& P, double r) {
    for (int tries = 0; tries < 500; ++tries) {
        Vec z = r * random_unit_vector(rng, P.dim);
        bool ok = true;
        for (const auto& f : P.facets)
            if (std::abs(f.plane.eval(z)) < 1e-4) ok = false;
        if (ok) return z;
    }
    throw std::runtime_error("no generic sphere sample found");
}

std::vector<Vec> circular_cone_dirs(int n, double half_angle, std::uint64_t seed) {
    auto rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::acos(-1.0));
    std::vector<Vec> dirs;
    for (int i = 0; i < n; ++i) {
        double phi = unif(rng);
        dirs.push_back(v3(std::sin(half_angle) * std::cos(phi),
                          std::sin(half_angle) * std::sin(phi),
                          -std::cos(half_angle)));
    }
    return dirs;
}

} // namespace

TEST_CASE("gram matching on an orthonormal frame finds all permutations") {
    std::vector<Vec> frame = {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)};
    auto perms = match_by_gram(frame, frame);
    CHECK(perms.size() == 6);
    std::vector<int> id = {0, 1, 2};
    CHECK(std::find(perms.begin(), perms.end(), id) != perms.end());
    CHECK(perms.front() == id);
}

TEST_CASE("gram matching on generic rotated directions is unique") {
    auto rng = make_rng(70, 0);
    std::vector<Vec> d1;
    for (int i = 0; i < 7; ++i) d1.push_back(random_unit_vector(rng, 3));
    Mat R = random_rotation(rng, 3);
    std::vector<Vec> d2;
    for (const auto& u : d1) d2.push_back(R * u);
    std::shuffle(d2.begin(), d2.end(), rng);
    auto perms = match_by_gram(d1, d2);
    REQUIRE(perms.size() == 1);
    for (std::size_t i = 0; i < d1.size(); ++i)
        CHECK((Vec(R * d1[i]) - d2[perms[0][i]]).norm() < 1e-9);
    CHECK(match_by_gram(d1, {v3(1, 0, 0)}).empty());
}

TEST_CASE("gram matching gives up past the node budget") {
    // Ten unit vectors with all pairwise inner products equal: every
    // permutation is Gram-compatible, so the search tree dwarfs the budget.
    std::vector<Vec> simplex;
    for (int i = 0; i < 10; ++i) {
        Vec v = -Vec::Ones(10) / 10.0;
        v[i] += 1.0;
        simplex.push_back(v.normalized());
    }
    CHECK_THROWS_AS(match_by_gram(simplex, simplex), SearchBudgetExceeded);
}

TEST_CASE("a cone is congruent to itself with the identity witness") {
    SupportCone c = support_cone(v3(0, 0, 1), cube(0.25));
    auto w = cone_congruent(c, c);
    REQUIRE(w.has_value());
    std::vector<int> id(c.spanning_count());
    std::iota(id.begin(), id.end(), 0);
    CHECK(w->permutation == id);
    CHECK(w->residual == 0.0);
    CHECK((w->map.matrix - Mat::Identity(3, 3)).norm() < 1e-9);
}

TEST_CASE("rotating the directions is recovered by the witness map") {
    auto rng = make_rng(71, 0);
    for (int rep = 0; rep < 10; ++rep) {
        Polytope P = random_polytope(600 + rep, 3, 16, 0.6);
        Vec z = sphere_point_off_planes(rng, P, 1.0);
        SupportCone A = support_cone(z, P);
        Mat R = random_rotation(rng, 3);
        SupportCone B = mapped_cone(A, R);
        auto w = cone_congruent(A, B);
        REQUIRE(w.has_value());
        CHECK(w->residual <= 1e-9);
        for (int i = 0; i < A.spanning_count(); ++i) {
            Vec img = w->map.matrix * A.directions[i];
            CHECK((img - B.directions[w->permutation[i]]).norm() < 1e-9);
        }
        // Gram soundness of the accepted permutation.
        Mat G1 = gram_matrix(A.directions), G2 = gram_matrix(B.directions);
        for (int i = 0; i < A.spanning_count(); ++i)
            for (int j = 0; j < A.spanning_count(); ++j)
                CHECK(std::abs(G1(i, j) -
                               G2(w->permutation[i], w->permutation[j])) < 1e-9);
    }
}

TEST_CASE("mirrored cones are congruent with a reflection witness") {
    Polytope P = random_polytope(640, 3, 16, 0.6);
    auto rng = make_rng(72, 0);
    Vec z = sphere_point_off_planes(rng, P, 1.0);
    SupportCone A = support_cone(z, P);
    Mat F = Mat::Identity(3, 3);
    F(0, 0) = -1.0;
    SupportCone B = mapped_cone(A, F);
    auto w = cone_congruent(A, B);
    REQUIRE(w.has_value());
    CHECK(w->map.det() == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("count mismatch and apex mismatch") {
    Polytope P = cube(0.25);
    SupportCone top = support_cone(v3(0, 0, 1), P);
    SupportCone corner = support_cone(v3(1, 1, 1), P);
    SupportCone corner_moved = corner;
    corner_moved.apex = v3(0, 0, 1);
    CHECK_FALSE(cone_congruent(top, corner_moved).has_value());
    CHECK_THROWS_AS(cone_congruent(top, corner), ApexMismatch);
}

TEST_CASE("matching gram but mismatched face structure is rejected") {
    SupportCone A = support_cone(v3(0, 0, 1), cube(0.25));
    REQUIRE(A.spanning_count() == 4);
    SupportCone B = A;
    // Re-wire the silhouette cycle 0-1-2-3 into the crossing pairing; no
    // square symmetry maps one onto the other.
    B.faces2 = {{0, 2}, {1, 2}, {1, 3}, {0, 3}};
    std::sort(B.faces2.begin(), B.faces2.end());
    CHECK_FALSE(cone_congruent(A, B).has_value());
    CHECK(cone_congruent(A, A).has_value());
}

TEST_CASE("congruence behaves as an equivalence on rotated copies") {
    auto rng = make_rng(73, 0);
    Polytope P = random_polytope(660, 3, 14, 0.6);
    Vec z = sphere_point_off_planes(rng, P, 1.0);
    SupportCone A = support_cone(z, P);
    Mat R1 = random_rotation(rng, 3), R2 = random_rotation(rng, 3);
    SupportCone B = mapped_cone(A, R1);
    SupportCone C = mapped_cone(B, R2);
    auto ab = cone_congruent(A, B), bc = cone_congruent(B, C),
         ba = cone_congruent(B, A), ac = cone_congruent(A, C);
    REQUIRE(ab.has_value());
    REQUIRE(bc.has_value());
    REQUIRE(ba.has_value());
    REQUIRE(ac.has_value());
    CHECK((ba->map.matrix - ab->map.matrix.transpose()).norm() < 1e-9);
    CHECK((ac->map.matrix - Mat(bc->map.matrix * ab->map.matrix)).norm() < 1e-9);
}

TEST_CASE("spherical polytopes: identity, rotation, and count mismatch") {
    auto rng = make_rng(74, 0);
    Polytope P = random_polytope(680, 3, 16, 0.6);
    Vec z = sphere_point_off_planes(rng, P, 1.0);
    SphericalPolytope S = spherical_projection(z, P, 1.0);

    auto self = spherical_congruent(S, S);
    REQUIRE(self.has_value());
    CHECK(self->residual <= 1e-12);

    // Rotating the whole scene about the origin rotates the projection;
    // congruence does not need the source points to correspond.
    Mat R = random_rotation(rng, 3);
    SphericalPolytope SR = spherical_projection(R * z, transformed(P, R), 1.0);
    auto w = spherical_congruent(S, SR);
    REQUIRE(w.has_value());
    CHECK(w->residual <= 1e-9);
    for (std::size_t i = 0; i < S.vertices.size(); ++i) {
        Vec img = w->map.matrix * S.vertices[i];
        CHECK((img - SR.vertices[w->permutation[i]]).norm() < 1e-8);
    }
    CHECK_THROWS_AS(cone_congruent(support_cone(z, P),
                                   support_cone(R * z, transformed(P, R))),
                    ApexMismatch);

    Polytope T = convex_hull(
        {v3(0, 0, 0), v3(0.4, 0, 0), v3(0, 0.4, 0), v3(0, 0, 0.4)}, 3);
    Vec zt = v3(1, 2, 3).normalized();
    SphericalPolytope ST = spherical_projection(zt, T, 1.0);
    SphericalPolytope SC = spherical_projection(zt, cube(0.25), 1.0);
    CHECK(ST.vertices.size() != SC.vertices.size());
    CHECK_FALSE(spherical_congruent(ST, SC).has_value());

    SphericalPolytope S2 = S;
    S2.r = 2.0;
    for (auto& v : S2.vertices) v *= 2.0;
    CHECK_THROWS_AS(spherical_congruent(S, S2), RadiusMismatch);
}

TEST_CASE("cone and projection congruence agree at a shared source point") {
    auto rng = make_rng(75, 0);
    for (int rep = 0; rep < 8; ++rep) {
        Polytope P = random_polytope(700 + rep, 3, 14, 0.6);
        bool expect_equal = rep % 2 == 0;
        Polytope Q = expect_equal
                         ? P
                         : random_polytope(800 + rep, 3, 14, 0.6);
        Vec z = sphere_point_off_planes(rng, P, 1.0);
        bool cones = false, sph = false;
        try {
            cones = cone_congruent(support_cone(z, P), support_cone(z, Q))
                        .has_value();
            sph = spherical_congruent(spherical_projection(z, P, 1.0),
                                      spherical_projection(z, Q, 1.0))
                      .has_value();
        } catch (const RegionBoundary&) {
            continue;
        }
        CHECK(cones == sph);
        if (expect_equal) CHECK(cones);
    }
}

TEST_CASE("circular cone classification") {
    auto shape = cone_shape_classify(circular_cone_dirs(24, std::acos(-1.0) / 4, 5));
    CHECK(shape.kind == ConeShapeKind::Circular);
    CHECK(shape.axis_ratio == doctest::Approx(1.0).epsilon(1e-9));

    // Classification is invariant under a seeded rotation.
    auto rng = make_rng(76, 0);
    Mat R = random_rotation(rng, 3);
    auto dirs = circular_cone_dirs(24, 0.5, 6);
    for (auto& u : dirs) u = R * u;
    auto rotated = cone_shape_classify(dirs);
    CHECK(rotated.kind == ConeShapeKind::Circular);
    CHECK(rotated.axis_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cone over a tilted great circle is elliptical") {
    // Unit sphere about the origin, source at its north pole; the great
    // circle in the plane x3 = x1 projects from the source to a cone whose
    // section has semi-axis ratio 2^(1/4).
    auto rng = make_rng(77, 0);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::acos(-1.0));
    Vec apex = v3(0, 0, 1);
    std::vector<Vec> dirs;
    for (int i = 0; i < 40; ++i) {
        double t = unif(rng);
        Vec s = v3(std::cos(t) / std::sqrt(2.0), std::sin(t),
                   std::cos(t) / std::sqrt(2.0));
        if ((s - apex).norm() < 1e-6) continue;
        dirs.push_back((s - apex).normalized());
    }
    auto shape = cone_shape_classify(dirs);
    CHECK(shape.kind == ConeShapeKind::Elliptical);
    CHECK(shape.axis_ratio ==
          doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-9));
}

TEST_CASE("shape classification rejects bad samples") {
    auto rng = make_rng(78, 0);
    std::vector<Vec> noise;
    for (int i = 0; i < 12; ++i) noise.push_back(random_unit_vector(rng, 3));
    CHECK_THROWS_AS(cone_shape_classify(noise), FitFailed);
    CHECK_THROWS_AS(cone_shape_classify(circular_cone_dirs(5, 0.7, 9)),
                    DegenerateInput);
}
