// Acceptance gate: one printed line per criterion, nonzero exit on any
// failure. Runs against the library only; no external inputs.
#include "sightcone/io.hpp"
#include "sightcone/rng.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace sightcone;

namespace {

Vec v3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

struct Line {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool congruent_at(const Vec& z, const Polytope& P, const Polytope& Q,
                  VerifyMode mode) {
    if (mode == VerifyMode::Cones)
        return cone_congruent(support_cone(z, P), support_cone(z, Q)).has_value();
    return spherical_congruent(spherical_projection(z, P, 1.0),
                               spherical_projection(z, Q, 1.0))
        .has_value();
}

// ---- criteria 1-3 share their verdict corpora so criterion 4 can compare
// modes without recomputation.
std::vector<std::array<VerdictKind, 2>> corpus_kinds;

Line criterion_self_pairs() {
    auto t0 = Clock::now();
    int equal = 0;
    double max_res = 0.0;
    for (int i = 0; i < 50; ++i) {
        Polytope P = random_polytope(100 + i, 3, 6 + i % 5, 0.4);
        std::array<VerdictKind, 2> ks{};
        for (int m = 0; m < 2; ++m) {
            Verdict v = verify_pair(P, P, 1.0,
                                    m ? VerifyMode::Projections : VerifyMode::Cones,
                                    500, 100 + i);
            ks[m] = v.kind;
            if (m == 0 && v.kind == VerdictKind::Equal) ++equal;
            max_res = std::max(max_res, v.max_residual);
        }
        if (ks[1] != VerdictKind::Equal) equal = -1000;
        corpus_kinds.push_back(ks);
    }
    double secs = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d/50 self-pairs Equal in both modes, max residual %.2e, %.1fs",
                  equal, max_res, secs);
    return {equal == 50 && max_res <= 1e-9 && secs < 30.0, buf};
}

Line criterion_translates() {
    int distinct = 0, equal = 0, witness_bad = 0;
    for (int i = 0; i < 50; ++i) {
        Polytope P = random_polytope(200 + i, 3, 6 + i % 5, 0.35);
        auto rng = make_rng(300 + static_cast<std::uint64_t>(i), 0);
        std::uniform_real_distribution<double> mag(0.02, 0.1);
        Polytope Q = translated(P, mag(rng) * random_unit_vector(rng, 3));
        std::array<VerdictKind, 2> ks{};
        for (int m = 0; m < 2; ++m) {
            VerifyMode mode = m ? VerifyMode::Projections : VerifyMode::Cones;
            Verdict v = verify_pair(P, Q, 1.0, mode, 500, 200 + i);
            ks[m] = v.kind;
            if (v.kind == VerdictKind::Equal) ++equal;
            if (m == 0 && v.kind == VerdictKind::Distinct) ++distinct;
            if (v.kind == VerdictKind::Distinct &&
                congruent_at(*v.witness, P, Q, mode))
                ++witness_bad;
        }
        corpus_kinds.push_back(ks);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d/50 translated pairs Distinct, %d Equal, %d witnesses broke",
                  distinct, equal, witness_bad);
    return {distinct >= 48 && equal == 0 && witness_bad == 0, buf};
}

Line criterion_rotations() {
    int equal = 0, distinct = 0;
    for (int i = 0; i < 25; ++i) {
        Polytope P = random_polytope(400 + i, 3, 6 + i % 5, 0.4);
        auto rng = make_rng(500 + static_cast<std::uint64_t>(i), 0);
        Polytope Q = transformed(P, random_rotation(rng, 3));
        if (same_vertex_set(P, Q, 1e-9)) return {false, "rotation hit a symmetry"};
        std::array<VerdictKind, 2> ks{};
        for (int m = 0; m < 2; ++m) {
            Verdict v = verify_pair(P, Q, 1.0,
                                    m ? VerifyMode::Projections : VerifyMode::Cones,
                                    500, 400 + i);
            ks[m] = v.kind;
            if (v.kind == VerdictKind::Equal) ++equal;
            if (m == 0 && v.kind == VerdictKind::Distinct) ++distinct;
        }
        corpus_kinds.push_back(ks);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/25 rotated pairs Distinct, %d Equal",
                  distinct, equal);
    return {equal == 0, buf};
}

Line criterion_mode_agreement() {
    int mismatches = 0;
    for (const auto& ks : corpus_kinds)
        if (ks[0] != ks[1]) ++mismatches;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d verdicts agree between modes",
                  static_cast<int>(corpus_kinds.size()) - mismatches,
                  static_cast<int>(corpus_kinds.size()));
    return {mismatches == 0 && corpus_kinds.size() == 125, buf};
}

// True when the ray from z through p meets the ball.
bool ray_hits_ball(const Vec& z, const Vec& p, const Ball& B) {
    Vec u = p - z;
    double t = std::max(0.0, (B.center - z).dot(u) / u.squaredNorm());
    return (z + t * u - B.center).norm() <= B.radius;
}

// Largest angle from the cap center still hitting the ball, along the
// great circle toward e; bisection on the hit predicate.
double cap_radius_oracle(const Vec& z, const Ball& B, const SphericalCap& cap,
                         const Vec& e) {
    auto point = [&](double theta) {
        return std::cos(theta) * cap.center_dir + std::sin(theta) * e;
    };
    double lo = 0.0, hi = 3.14;
    if (!ray_hits_ball(z, point(lo), B)) return -1.0;
    if (ray_hits_ball(z, point(hi), B)) return -2.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (ray_hits_ball(z, point(mid), B) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Line criterion_balls() {
    // Centers collinear with the sphere center: every pole then sits on a
    // symmetry axis of the configuration, where the shadow of a ball is an
    // exact cap and the bisection oracle pins its radius.  Off-axis poles
    // see a slightly non-circular outline and no cap matches it to 1e-6.
    const std::array<Ball, 5> B = {
        Ball{v3(0.00, 0, 0), 0.30}, Ball{v3(0.00, 0, 0), 0.36},
        Ball{v3(0.12, 0, 0), 0.30}, Ball{v3(-0.08, 0, 0), 0.22},
        Ball{v3(0.05, 0, 0), 0.40}};
    int wrong_verdicts = 0, wrong_witnesses = 0;
    double worst_oracle = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            Verdict v = verify_balls(B[i], B[j], 1.0);
            if ((i == j) != (v.kind == VerdictKind::Equal)) ++wrong_verdicts;

            // sphere intersections of the line through the two centers
            Vec u = B[j].center - B[i].center;
            u = u.norm() > 1e-12 ? Vec(u.normalized()) : v3(1, 0, 0);
            double b_half = B[i].center.dot(u);
            double s = std::sqrt(b_half * b_half + 1.0 -
                                 B[i].center.squaredNorm());
            const Vec poles[2] = {Vec(B[i].center + (-b_half + s) * u),
                                  Vec(B[i].center + (-b_half - s) * u)};
            if (v.kind == VerdictKind::Distinct) {
                double to_pole = std::min((*v.witness - poles[0]).norm(),
                                          (*v.witness - poles[1]).norm());
                if (to_pole > 1e-9) ++wrong_witnesses;
            }
            for (const Vec& z : poles)
                for (const Ball& b : {B[i], B[j]}) {
                    SphericalCap cap = ball_cap(z, b, 1.0);
                    const Vec& m = cap.center_dir;
                    Vec e1 = z - z.dot(m) * m;
                    e1 = e1.norm() > 1e-9 ? Vec(e1.normalized())
                                          : Vec((std::abs(m[0]) < 0.9
                                                     ? v3(1, 0, 0) - m[0] * m
                                                     : v3(0, 1, 0) - m[1] * m)
                                                    .normalized());
                    Vec e2(3);
                    e2 << m[1] * e1[2] - m[2] * e1[1], m[2] * e1[0] - m[0] * e1[2],
                        m[0] * e1[1] - m[1] * e1[0];
                    for (const Vec& e : {e1, e2}) {
                        double oracle = cap_radius_oracle(z, b, cap, e);
                        worst_oracle = std::max(
                            worst_oracle, std::abs(oracle - cap.angular_radius));
                    }
                }
        }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "grid verdicts wrong %d, off-pole witnesses %d, oracle gap %.2e",
                  wrong_verdicts, wrong_witnesses, worst_oracle);
    return {wrong_verdicts == 0 && wrong_witnesses == 0 && worst_oracle <= 1e-6,
            buf};
}

Line criterion_counterexample() {
    CounterexampleReport rep = counterexample_report();
    bool pass = std::abs(rep.radius_s1 - 1.0) <= 1e-9 &&
                std::abs(rep.radius_s2 - 1.0) <= 1e-9 && rep.circles_congruent &&
                rep.c1.kind == ConeShapeKind::Circular &&
                rep.c2.kind == ConeShapeKind::Elliptical &&
                std::abs(rep.c2.axis_ratio - std::pow(2.0, 0.25)) <= 1e-9 &&
                !rep.cones_congruent;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "radius_s2 %.12f, axis_ratio %.9f, cones congruent: %s",
                  rep.radius_s2, rep.c2.axis_ratio,
                  rep.cones_congruent ? "yes" : "no");
    return {pass, buf};
}

Line criterion_oracle_equivalence() {
    int checked = 0, agreed = 0;
    for (int d : {3, 4}) {
        const int want = d == 3 ? 100 : 50;
        for (int i = 0; i < want; ++i) {
            Polytope P = random_polytope(600 + 37 * d + i, d, d + 3 + i % 5, 0.5);
            auto rng = make_rng(700 + static_cast<std::uint64_t>(d * 1000 + i), 0);
            for (int attempt = 0; attempt < 32; ++attempt) {
                Vec z = random_unit_vector(rng, d);
                try {
                    SupportCone cone = support_cone(z, P);
                    auto extremal = spanning_directions_extremal(z, P);
                    ++checked;
                    if (same_direction_set(cone.directions, extremal, 1e-9))
                        ++agreed;
                    break;
                } catch (const RegionBoundary&) {
                } catch (const InsidePolytope&) {
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d instances agree (%d checked of 150)",
                  agreed, checked, checked);
    return {checked == 150 && agreed == 150, buf};
}

Line criterion_region_coherence() {
    int violations = 0, classes_20 = 0, scenes_done = 0;
    for (int s = 0; s < 20; ++s) {
        Scene scene;
        scene.r = 1.0;
        scene.polytopes.push_back(random_polytope(900 + s, 3, 6 + s % 5, 0.35));
        if (s % 2)
            scene.polytopes.push_back(random_polytope(950 + s, 3, 6 + s % 4, 0.35));
        const auto planes = scene_planes(scene);
        const double guard = 1e-7;

        std::map<SignVector, std::pair<int, std::vector<std::vector<int>>>> classes;
        for (const Vec& z : sphere_samples(5000, 3, 1.0, 2000 + s)) {
            SignVector sv;
            try {
                sv = sign_vector(z, planes, guard);
            } catch (const OnPlane&) {
                continue;
            }
            std::vector<std::vector<int>> bounds;
            for (const auto& P : scene.polytopes)
                bounds.push_back(shadow_boundary(z, P));
            auto [it, fresh] = classes.try_emplace(sv, 0, bounds);
            it->second.first += 1;
            if (!fresh && it->second.second != bounds) ++violations;
        }
        for (const auto& [sv, entry] : classes)
            if (entry.first >= 20) ++classes_20;
        ++scenes_done;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d scenes, %d classes with >=20 samples, %d violations",
                  scenes_done, classes_20, violations);
    return {violations == 0 && scenes_done == 20 && classes_20 > 0, buf};
}

double endpoint_error(const std::pair<Vec, Vec>& got, const Vec& x, const Vec& y) {
    double a = std::max((got.first - x).norm(), (got.second - y).norm());
    double b = std::max((got.first - y).norm(), (got.second - x).norm());
    return std::min(a, b);
}

Line criterion_recovery() {
    int exact_bad = 0, noise_bad = 0;
    double worst_exact = 0.0, worst_noise = 0.0;
    const double pi = std::acos(-1.0);
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(1100 + static_cast<std::uint64_t>(i), 0);
        Vec x = random_in_ball(rng, 2, 0.85);
        Vec y = random_in_ball(rng, 2, 0.85);
        while ((x - y).norm() < 1e-2) y = random_in_ball(rng, 2, 0.85);

        std::vector<AngleSample> samples;
        for (int k = 0; k < 20; ++k) {
            double t = 2.0 * pi * k / 20 + 0.01 + 0.037 * i;
            Vec z(2);
            z << std::cos(t), std::sin(t);
            Vec a = x - z, b = y - z;
            samples.push_back(
                {z, std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()),
                                         -1.0, 1.0))});
        }
        try {
            double err = endpoint_error(recover_segment(samples, 1.0, i), x, y);
            worst_exact = std::max(worst_exact, err);
            if (err > 1e-6) ++exact_bad;
        } catch (const Error&) {
            ++exact_bad;
        }

        auto noisy = samples;
        std::normal_distribution<double> gauss(0.0, 1e-8);
        auto nrng = make_rng(1200 + static_cast<std::uint64_t>(i), 0);
        for (auto& smp : noisy)
            smp.alpha = std::clamp(smp.alpha + gauss(nrng), 0.0, pi - 1e-12);
        try {
            double err = endpoint_error(recover_segment(noisy, 1.0, i), x, y);
            worst_noise = std::max(worst_noise, err);
            if (err > 1e-4) ++noise_bad;
        } catch (const Error&) {
            ++noise_bad;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "exact worst %.2e (%d over 1e-6), noisy worst %.2e (%d over 1e-4)",
                  worst_exact, exact_bad, worst_noise, noise_bad);
    return {exact_bad == 0 && noise_bad == 0, buf};
}

Line criterion_cube_fixture() {
    std::vector<Vec> pts;
    for (int s = 0; s < 8; ++s)
        pts.push_back(v3(s & 1 ? 0.25 : -0.25, s & 2 ? 0.25 : -0.25,
                         s & 4 ? 0.25 : -0.25));
    SphericalPolytope sp =
        spherical_projection(v3(0, 0, 1), convex_hull(pts, 3), 1.0);
    double worst = 1.0;
    if (sp.vertices.size() == 4) {
        worst = 0.0;
        for (double sx : {-1.0, 1.0})
            for (double sy : {-1.0, 1.0}) {
                Vec want = v3(sx * 6.0 / 11, sy * 6.0 / 11, -7.0 / 11);
                double best = 1.0;
                for (const auto& v : sp.vertices)
                    best = std::min(best, (v - want).norm());
                worst = std::max(worst, best);
            }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "4 vertices at (+-6/11, +-6/11, -7/11), gap %.2e",
                  worst);
    return {sp.vertices.size() == 4 && worst <= 1e-12, buf};
}

} // namespace

int main() {
    struct Entry {
        const char* label;
        Line (*fn)();
    };
    const Entry entries[] = {
        {"self-congruence suite", criterion_self_pairs},
        {"translate discrimination", criterion_translates},
        {"rotate discrimination", criterion_rotations},
        {"mode agreement", criterion_mode_agreement},
        {"ball grid and pole witnesses", criterion_balls},
        {"congruent circles, incongruent cones", criterion_counterexample},
        {"silhouette oracle equivalence", criterion_oracle_equivalence},
        {"region coherence", criterion_region_coherence},
        {"segment recovery", criterion_recovery},
        {"cube-from-pole fixture", criterion_cube_fixture},
    };
    bool all = true;
    int id = 0;
    for (const auto& e : entries) {
        ++id;
        Line line;
        try {
            line = e.fn();
        } catch (const std::exception& ex) {
            line = {false, std::string("exception: ") + ex.what()};
        }
        all = all && line.pass;
        std::printf("criterion %2d: %s  %s (%s)\n", id,
                    line.pass ? "PASS" : "FAIL", e.label, line.detail.c_str());
    }
    return all ? 0 : 1;
}
