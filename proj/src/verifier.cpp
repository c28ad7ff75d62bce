#include "sightcone/verifier.hpp"

#include "sightcone/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace sightcone {

namespace {

Vec gaussian_vec(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> gauss;
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    return v;
}

struct CheckResult {
    bool ok = false;
    double residual = 0.0;
};

CheckResult check_congruence(const Vec& z, const Polytope& P, const Polytope& Q,
                             double r, VerifyMode mode, const Tolerance& tol) {
    if (mode == VerifyMode::Cones) {
        auto w = cone_congruent(support_cone(z, P, tol), support_cone(z, Q, tol), tol);
        return {w.has_value(), w ? w->residual : 0.0};
    }
    auto w = spherical_congruent(spherical_projection(z, P, r, tol),
                                 spherical_projection(z, Q, r, tol), tol);
    return {w.has_value(), w ? w->residual : 0.0};
}

std::pair<int, int> ordered(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
}

/// Processes one region for the equality decision: runs the stability
/// probes, matches silhouette edges of P to edges of Q at the vertex level,
/// and accumulates coverage. Returns false when a mismatch disproves
/// equality (the reason lands in rep.note).
bool process_region(const Polytope& P, const Polytope& Q, double r,
                    const RegionReport& region, std::uint64_t seed,
                    const Tolerance& tol,
                    const std::set<std::pair<int, int>>& p_edges,
                    const std::set<std::pair<int, int>>& q_edges,
                    std::set<std::pair<int, int>>& covered,
                    EqualityReport& rep) {
    auto corr = edge_correspondence(P, Q, r, region, 20, seed, tol);
    if (!corr) {
        rep.note = "congruence failed at a region representative";
        return false;
    }
    SupportCone cp = support_cone(region.representative, P, tol);
    SupportCone cq = support_cone(region.representative, Q, tol);
    const double vertex_eps = 1e-7 * r;

    std::vector<double> dev(cp.spanning_count());
    for (int i = 0; i < cp.spanning_count(); ++i) {
        const Vec& pv = P.vertices[cp.boundary_vertex_ids[i]];
        const Vec& qv = Q.vertices[cq.boundary_vertex_ids[(*corr)[i]]];
        dev[i] = (pv - qv).norm();
        rep.max_deviation = std::max(rep.max_deviation, dev[i]);
        if (dev[i] > vertex_eps) {
            rep.note = "corresponding silhouette vertices do not coincide";
            return false;
        }
    }
    for (auto [i, j] : cp.faces2) {
        auto pe = ordered(cp.boundary_vertex_ids[i], cp.boundary_vertex_ids[j]);
        auto qe = ordered(cq.boundary_vertex_ids[(*corr)[i]],
                          cq.boundary_vertex_ids[(*corr)[j]]);
        if (!p_edges.count(pe) || !q_edges.count(qe)) {
            rep.note = "silhouette adjacency is not an edge of the body";
            return false;
        }
        if (!covered.count(pe)) {
            rep.matched.push_back(EdgeMatch{pe, qe, std::max(dev[i], dev[j])});
            covered.insert(pe);
        }
    }
    RegionReport stored = region;
    stored.stable_permutation = corr;
    rep.regions.push_back(std::move(stored));
    return true;
}

/// A sphere point from which facet F is visible and facet G is not. Solves
/// n_F.z = c_F + a and n_G.z = c_G - b exactly and completes along the
/// shared edge direction; the margin ladder goes small enough to land in
/// the sliver left by a nearly flat dihedral (which plain sampling and any
/// coarse scan miss).
std::optional<Vec> facet_pair_viewpoint(const Polytope& P, int f_vis, int f_inv,
                                        double r,
                                        const std::vector<Hyperplane>& planes,
                                        std::uint64_t seed) {
    const Vec& nf = P.facets[f_vis].plane.normal;
    const Vec& ng = P.facets[f_inv].plane.normal;
    const double cf = P.facets[f_vis].plane.offset;
    const double cg = P.facets[f_inv].plane.offset;
    const double guard = 1e-7 * r;
    const double dot = nf.dot(ng);
    const double det = 1.0 - dot * dot;
    Vec w(3);
    w << nf[1] * ng[2] - nf[2] * ng[1], nf[2] * ng[0] - nf[0] * ng[2],
        nf[0] * ng[1] - nf[1] * ng[0];
    if (w.norm() < 1e-12 || det < 1e-24) return std::nullopt;
    w.normalize();
    auto rng = make_rng(seed, 6067);
    std::uniform_real_distribution<double> wobble(0.6, 1.4);
    for (double a : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 3e-6, 1e-6}) {
        for (int jit = 0; jit < 4; ++jit) {
            const double av = jit ? a * wobble(rng) : a;
            const double bv = jit ? a * wobble(rng) : a;
            const double rf = cf + av, rg = cg - bv;
            const double alpha = (rf - dot * rg) / det;
            const double beta = (rg - dot * rf) / det;
            Vec base = alpha * nf + beta * ng;
            const double s2 = r * r - base.squaredNorm();
            if (s2 <= 0.0) continue;
            for (double sgn : {1.0, -1.0}) {
                Vec z = base + sgn * std::sqrt(s2) * w;
                if (P.facets[f_vis].plane.eval(z) <= guard) continue;
                if (P.facets[f_inv].plane.eval(z) >= -guard) continue;
                bool off = true;
                for (const auto& pl : planes)
                    if (std::abs(pl.eval(z)) <= guard) {
                        off = false;
                        break;
                    }
                if (off) return z;
            }
        }
    }
    return std::nullopt;
}

Verdict verify_attempt(const Polytope& P, const Polytope& Q, double r,
                       VerifyMode mode, int n_samples, std::uint64_t seed,
                       const Tolerance& tol) {
    Verdict v;
    Scene scene{r, {P, Q}, {}};
    validate_scene(scene, tol);

    auto reports = sample_regions(scene, n_samples, seed, tol);
    for (const auto& region : reports) {
        CheckResult c = check_congruence(region.representative, P, Q, r, mode, tol);
        v.regions.push_back(RegionSummary{region.sign_vector, std::nullopt, c.residual});
        if (!c.ok) {
            v.kind = VerdictKind::Distinct;
            v.witness = region.representative;
            v.note = "congruence failed at a region representative";
            return v;
        }
        v.max_residual = std::max(v.max_residual, c.residual);
    }

    auto rng = make_rng(seed, 7001);
    const int n_extra = std::max(20, n_samples / 5);
    for (int k = 0; k < n_extra; ++k) {
        Vec z = r * random_unit_vector(rng, P.dim);
        CheckResult c;
        try {
            c = check_congruence(z, P, Q, r, mode, tol);
        } catch (const RegionBoundary&) {
            continue;
        }
        if (!c.ok) {
            v.kind = VerdictKind::Distinct;
            v.witness = z;
            v.note = "congruence failed at an extra sample";
            return v;
        }
        v.max_residual = std::max(v.max_residual, c.residual);
    }

    EqualityReport eq =
        decide_equality(P, Q, r, seed, std::max(n_samples, 2000), tol);
    if (!eq.equal) {
        v.kind = VerdictKind::Inconclusive;
        v.note = "congruence passed everywhere but the vertex-level decision "
                 "did not confirm: " +
                 (eq.note.empty() ? std::string("incomplete edge coverage") : eq.note);
        return v;
    }
    for (const auto& region : eq.regions) {
        for (auto& summary : v.regions)
            if (summary.signs == region.sign_vector)
                summary.permutation = region.stable_permutation;
    }
    v.kind = VerdictKind::Equal;
    return v;
}

} // namespace

Verdict verify_pair(const Polytope& P, const Polytope& Q, double r,
                    VerifyMode mode, int n_samples, std::uint64_t seed,
                    const Tolerance& tol) {
    auto attempt = [&](int n) -> Verdict {
        try {
            return verify_attempt(P, Q, r, mode, n, seed, tol);
        } catch (const Error& e) {
            Verdict v;
            v.kind = VerdictKind::Inconclusive;
            v.note = e.what();
            return v;
        }
    };
    Verdict v = attempt(n_samples);
    if (v.kind == VerdictKind::Inconclusive && n_samples < 5000) {
        Verdict escalated = attempt(5000);
        if (escalated.kind == VerdictKind::Inconclusive)
            escalated.note += " (after escalating to 5000 samples)";
        return escalated;
    }
    return v;
}

Verdict verify_balls(const Ball& K, const Ball& L, double r,
                     const Tolerance& tol) {
    Verdict v;
    const int d = static_cast<int>(K.center.size());
    for (const Ball* b : {&K, &L})
        if (b->radius <= 0.0 || b->center.norm() + b->radius > r * (1.0 - 1e-6))
            throw DegenerateInput("verify_balls: ball not strictly interior");

    // Poles: where the line through both centers pierces the sphere. With
    // coincident centers any line through the common center works; take the
    // first coordinate axis. Both centers sit on the chord between the
    // poles, which is what makes two matching cap radii decisive: equal
    // tangency ratios at both chord ends force equal center distances.
    Vec u = L.center - K.center;
    if (u.norm() <= tol.len_eps(r)) {
        u = Vec::Zero(d);
        u[0] = 1.0;
    } else {
        u.normalize();
    }
    const double b_half = K.center.dot(u);
    const double disc = b_half * b_half + r * r - K.center.squaredNorm();
    const double s = std::sqrt(disc);

    const double cap_eps = tol.residual_max;
    for (double t : {-b_half + s, -b_half - s}) {
        Vec pole = K.center + t * u;
        SphericalCap ck = ball_cap(pole, K, r, tol);
        SphericalCap cl = ball_cap(pole, L, r, tol);
        double dev = std::max(std::abs(ck.angular_radius - cl.angular_radius),
                              (ck.center_dir - cl.center_dir).norm());
        v.max_residual = std::max(v.max_residual, dev);
        if (dev > cap_eps) {
            v.kind = VerdictKind::Distinct;
            v.witness = pole;
            v.note = "projected caps differ at a pole of the center line";
            return v;
        }
    }
    v.kind = VerdictKind::Equal;
    v.note = "caps agree at both poles of the center line";
    return v;
}

std::optional<std::vector<int>> edge_correspondence(
    const Polytope& P, const Polytope& Q, double r, const RegionReport& region,
    int n_probe, std::uint64_t seed, const Tolerance& tol) {
    Scene scene{r, {P, Q}, {}};
    const auto planes = scene_planes(scene);
    const double guard = 1e-7 * r;
    const Vec& rep = region.representative;

    auto base = cone_congruent(support_cone(rep, P, tol),
                               support_cone(rep, Q, tol), tol);
    if (!base) return std::nullopt;
    const std::vector<int>& sigma = base->permutation;

    auto rng = make_rng(seed, 5501);
    double delta = 0.03 * r;
    int found = 0;
    for (int attempts = 0; found < n_probe && attempts < 60 * n_probe; ++attempts) {
        Vec z = rep + delta * gaussian_vec(rng, P.dim);
        z = r * z.normalized();
        try {
            if (sign_vector(z, planes, guard) != region.sign_vector) {
                delta *= 0.7;
                continue;
            }
        } catch (const OnPlane&) {
            delta *= 0.7;
            continue;
        }
        auto w = cone_congruent(support_cone(z, P, tol), support_cone(z, Q, tol), tol);
        if (!w)
            throw UnstableRegion("edge_correspondence: congruence fails inside the class");
        if (w->permutation != sigma)
            throw UnstableRegion("edge_correspondence: permutation varies inside the class");
        ++found;
    }
    if (found < n_probe)
        throw UnstableRegion("edge_correspondence: class too thin to probe");
    return sigma;
}

EqualityReport decide_equality(const Polytope& P, const Polytope& Q, double r,
                               std::uint64_t seed, int n_samples,
                               const Tolerance& tol) {
    EqualityReport rep;
    rep.edges_total = static_cast<int>(P.edges.size());
    if (P.vertices.size() != Q.vertices.size()) {
        rep.note = "vertex counts differ";
        return rep;
    }
    if (P.edges.size() != Q.edges.size() || P.facets.size() != Q.facets.size()) {
        rep.note = "face counts differ";
        return rep;
    }

    Scene scene{r, {P, Q}, {}};
    const auto planes = scene_planes(scene);
    std::set<std::pair<int, int>> p_edges(P.edges.begin(), P.edges.end());
    std::set<std::pair<int, int>> q_edges(Q.edges.begin(), Q.edges.end());
    std::set<std::pair<int, int>> covered;
    std::set<SignVector> processed;

    auto reports = sample_regions(scene, n_samples, seed, tol);
    std::uint64_t region_salt = seed;
    for (const auto& region : reports) {
        processed.insert(region.sign_vector);
        SupportCone cp = support_cone(region.representative, P, tol);
        bool adds = false;
        for (auto [i, j] : cp.faces2)
            if (!covered.count(ordered(cp.boundary_vertex_ids[i],
                                       cp.boundary_vertex_ids[j])))
                adds = true;
        if (!adds) continue;
        if (!process_region(P, Q, r, region, ++region_salt, tol, p_edges, q_edges,
                            covered, rep))
            return rep;
        if (static_cast<int>(covered.size()) == rep.edges_total) break;
    }

    // Silhouettes of the sampled regions may miss edges of P; aim follow-up
    // viewpoints at the visible/invisible facet pair of each missing edge.
    if (static_cast<int>(covered.size()) < rep.edges_total && P.dim == 3) {
        for (const auto& e : p_edges) {
            if (covered.count(e)) continue;
            std::vector<int> shared;
            for (int f = 0; f < static_cast<int>(P.facets.size()); ++f) {
                const auto& ids = P.facets[f].vertex_ids;
                if (std::binary_search(ids.begin(), ids.end(), e.first) &&
                    std::binary_search(ids.begin(), ids.end(), e.second))
                    shared.push_back(f);
            }
            if (shared.size() != 2) continue;
            for (auto [f_vis, f_inv] : {std::pair{shared[0], shared[1]},
                                        std::pair{shared[1], shared[0]}}) {
                auto z = facet_pair_viewpoint(P, f_vis, f_inv, r, planes,
                                              ++region_salt);
                if (!z) continue;
                SignVector sv;
                try {
                    sv = sign_vector(*z, planes, 1e-7 * r);
                } catch (const OnPlane&) {
                    continue;
                }
                if (processed.count(sv)) continue;
                processed.insert(sv);
                RegionReport extra{sv, *z, 1, std::nullopt};
                if (!process_region(P, Q, r, extra, ++region_salt, tol, p_edges,
                                    q_edges, covered, rep))
                    return rep;
                if (covered.count(e)) break;
            }
        }
    }

    rep.full_coverage = static_cast<int>(covered.size()) == rep.edges_total;
    rep.equal = rep.full_coverage;
    if (!rep.full_coverage) rep.note = "incomplete edge coverage";
    return rep;
}

namespace {

/// Angle subtended by segment xy from z, made total for the optimizer:
/// denominators are floored, the cosine is clamped just inside [-1, 1].
double model_angle(const Vec& z, const Vec& x, const Vec& y, Vec* grad4) {
    Vec a = x - z, b = y - z;
    double na = std::max(a.norm(), 1e-12), nb = std::max(b.norm(), 1e-12);
    double g = a.dot(b) / (na * nb);
    g = std::clamp(g, -1.0 + 1e-15, 1.0 - 1e-15);
    double ang = std::acos(g);
    if (grad4) {
        double dacos = -1.0 / std::sqrt(1.0 - g * g);
        Vec dgdx = b / (na * nb) - g * a / (na * na);
        Vec dgdy = a / (na * nb) - g * b / (nb * nb);
        grad4->resize(4);
        (*grad4)[0] = dacos * dgdx[0];
        (*grad4)[1] = dacos * dgdx[1];
        (*grad4)[2] = dacos * dgdy[0];
        (*grad4)[3] = dacos * dgdy[1];
    }
    return ang;
}

struct FitOutcome {
    Vec x = Vec::Zero(2), y = Vec::Zero(2);
    double objective = std::numeric_limits<double>::infinity();
    bool converged = false;
};

FitOutcome fit_once(const std::vector<AngleSample>& samples, Vec x, Vec y) {
    const int n = static_cast<int>(samples.size());
    auto objective = [&](const Vec& xx, const Vec& yy) {
        double f = 0.0;
        for (const auto& s : samples) {
            double d = model_angle(s.z, xx, yy, nullptr) - s.alpha;
            f += d * d;
        }
        return f;
    };
    double f = objective(x, y);
    double lambda = 1e-3;
    FitOutcome out;
    for (int iter = 0; iter < 200; ++iter) {
        Mat J(n, 4);
        Vec res(n);
        for (int j = 0; j < n; ++j) {
            Vec g;
            res[j] = model_angle(samples[j].z, x, y, &g) - samples[j].alpha;
            J.row(j) = g.transpose();
        }
        Vec grad = J.transpose() * res;
        Mat H = J.transpose() * J;
        Vec step = Vec::Zero(4);
        bool accepted = false;
        for (int inner = 0; inner < 30; ++inner) {
            Mat Hl = H + lambda * Mat::Identity(4, 4);
            step = Hl.ldlt().solve(-grad);
            Vec xn = x + step.head(2), yn = y + step.tail(2);
            double fn = objective(xn, yn);
            if (fn < f) {
                x = xn;
                y = yn;
                f = fn;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e14) break;
        }
        if (!accepted) break;
        if (step.norm() < 1e-12) {
            out.converged = true;
            break;
        }
    }
    out.x = x;
    out.y = y;
    out.objective = f;
    return out;
}

} // namespace

double recover_objective(const std::vector<AngleSample>& samples, const Vec& x,
                         const Vec& y) {
    double f = 0.0;
    for (const auto& s : samples) {
        double d = model_angle(s.z, x, y, nullptr) - s.alpha;
        f += d * d;
    }
    return f;
}

Vec recover_gradient(const std::vector<AngleSample>& samples, const Vec& x,
                     const Vec& y) {
    Vec grad = Vec::Zero(4);
    for (const auto& s : samples) {
        Vec g;
        double d = model_angle(s.z, x, y, &g) - s.alpha;
        grad += 2.0 * d * g;
    }
    return grad;
}

std::pair<Vec, Vec> recover_segment(const std::vector<AngleSample>& samples,
                                    double r, std::uint64_t seed,
                                    const Tolerance& tol) {
    if (samples.size() < 8)
        throw DegenerateInput("recover_segment: need at least 8 samples");
    if (r <= 0.0) throw DegenerateInput("recover_segment: nonpositive radius");
    const double pi = std::acos(-1.0);
    for (const auto& s : samples) {
        if (s.z.size() != 2 || std::abs(s.z.norm() - r) > 1e-6 * r)
            throw DegenerateInput("recover_segment: sample point not on the circle");
        if (!std::isfinite(s.alpha) || s.alpha < 0.0 || s.alpha >= pi)
            throw AngleOutOfRange("recover_segment: angle outside [0, pi)");
    }

    auto rng = make_rng(seed, 9901);
    FitOutcome best;
    for (int start = 0; start < 8; ++start) {
        Vec x0 = random_in_ball(rng, 2, 0.9 * r);
        Vec y0 = random_in_ball(rng, 2, 0.9 * r);
        FitOutcome out = fit_once(samples, x0, y0);
        if (out.objective < best.objective) best = out;
    }
    if (!std::isfinite(best.objective))
        throw NoConvergence("recover_segment: all multistarts failed");
    double rms = std::sqrt(best.objective / samples.size());
    if (rms > 1e-3)
        throw NoConvergence("recover_segment: best fit residual too large");
    if ((best.x - best.y).norm() <= 1e-6 * r)
        throw DegenerateSegment("recover_segment: endpoints collapse");
    (void)tol;

    Vec x = best.x, y = best.y;
    if (y[0] < x[0] || (y[0] == x[0] && y[1] < x[1])) std::swap(x, y);
    return {x, y};
}

std::pair<Vec, Vec> recover_segment(const std::vector<AngleSample>& samples,
                                    const Mat& basis, double r,
                                    std::uint64_t seed, const Tolerance& tol) {
    if (basis.cols() != 2)
        throw DegenerateInput("recover_segment: basis must have two columns");
    if (orthogonality_defect(basis) > 1e-9)
        throw DegenerateInput("recover_segment: basis not orthonormal");
    auto [x, y] = recover_segment(samples, r, seed, tol);
    return {basis * x, basis * y};
}

CounterexampleReport counterexample_report(const Tolerance& tol) {
    // Unit sphere about the origin with the source point at its north
    // pole. The first circle is the equator; the second is the great
    // circle cut by the plane x3 = x1. Their cones from the pole are a
    // right circular cone and an elliptical one.
    CounterexampleReport out;
    const double r = 1.0;
    const double pi = std::acos(-1.0);
    Vec apex(3);
    apex << 0, 0, 1;

    auto s1 = [&](double t) {
        Vec p(3);
        p << std::cos(t), std::sin(t), 0.0;
        return p;
    };
    auto s2 = [&](double t) {
        Vec p(3);
        p << std::cos(t) / std::sqrt(2.0), std::sin(t), std::cos(t) / std::sqrt(2.0);
        return p;
    };

    out.radius_s1 = arc_circle(s1(0.3), s1(2.1), s1(4.4), r, tol).second;
    out.radius_s2 = arc_circle(s2(0.3), s2(2.1), s2(4.4), r, tol).second;
    out.circles_congruent = std::abs(out.radius_s1 - out.radius_s2) <= 1e-9;

    const int n = 16;
    SupportCone A, B;
    A.apex = apex;
    B.apex = apex;
    for (int k = 0; k < n; ++k) {
        double t = 2.0 * pi * k / n + 0.05;
        A.directions.push_back((s1(t) - apex).normalized());
        B.directions.push_back((s2(t) - apex).normalized());
        A.boundary_vertex_ids.push_back(k);
        B.boundary_vertex_ids.push_back(k);
        A.faces2.emplace_back(k, (k + 1) % n);
        B.faces2.emplace_back(k, (k + 1) % n);
    }
    out.c1 = cone_shape_classify(A.directions, tol);
    out.c2 = cone_shape_classify(B.directions, tol);
    out.cones_congruent = cone_congruent(A, B, tol).has_value();
    return out;
}

} // namespace sightcone
