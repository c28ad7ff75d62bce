#include "sightcone/polytope.hpp"

#include "sightcone/nnls.hpp"
#include "sightcone/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace sightcone {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

/// Unit normal and offset of the hyperplane through d affinely independent
/// points, oriented so that interior_ref is on the negative side.
Hyperplane plane_through(const std::vector<Vec>& pts, const std::vector<int>& ids,
                         const Vec& interior_ref, const Tolerance& tol) {
    const int d = static_cast<int>(pts[ids[0]].size());
    Mat span(static_cast<int>(ids.size()) - 1, d);
    for (int i = 1; i < static_cast<int>(ids.size()); ++i)
        span.row(i - 1) = (pts[ids[i]] - pts[ids[0]]).transpose();
    Eigen::JacobiSVD<Mat> svd(span, Eigen::ComputeFullV);
    Vec n = svd.matrixV().col(d - 1);
    double nn = n.norm();
    if (nn < tol.eps_abs) throw DegenerateInput("plane_through: degenerate facet");
    n /= nn;
    double c = n.dot(pts[ids[0]]);
    if (n.dot(interior_ref) > c) { n = -n; c = -c; }
    return {n, c};
}

struct SimplicialFacet {
    std::vector<int> vtx;  // sorted, size d
    Hyperplane plane;
    bool alive = true;
};

std::vector<int> ridge_of(const std::vector<int>& facet_vtx, int drop) {
    std::vector<int> r;
    r.reserve(facet_vtx.size() - 1);
    for (int v : facet_vtx)
        if (v != drop) r.push_back(v);
    return r;
}

/// Greedy selection of d+1 affinely independent points; empty on failure.
std::vector<int> initial_simplex(const std::vector<Vec>& pts, int d, double eps) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> chosen{0};
    Mat basis(d, 0);
    for (int step = 0; step < d; ++step) {
        int best = -1;
        double best_res = eps;
        Vec best_dir;
        for (int i = 0; i < n; ++i) {
            Vec v = pts[i] - pts[chosen[0]];
            // residual of v against the span collected so far
            Vec res = v;
            for (int c = 0; c < basis.cols(); ++c)
                res -= basis.col(c).dot(res) * basis.col(c);
            double rn = res.norm();
            if (rn > best_res) { best_res = rn; best = i; best_dir = res / rn; }
        }
        if (best < 0) return {};
        chosen.push_back(best);
        basis.conservativeResize(d, basis.cols() + 1);
        basis.col(basis.cols() - 1) = best_dir;
    }
    return chosen;
}

} // namespace

double Polytope::max_vertex_norm() const {
    double m = 0.0;
    for (const auto& v : vertices) m = std::max(m, v.norm());
    return m;
}

bool Polytope::contains(const Vec& x, double eps) const {
    for (const auto& f : facets)
        if (f.plane.eval(x) > eps) return false;
    return true;
}

Polytope convex_hull(const std::vector<Vec>& input, int d, const Tolerance& tol) {
    if (d < 2 || d > 8) throw DegenerateInput("convex_hull: dimension must be in [2, 8]");
    for (const auto& p : input)
        if (static_cast<int>(p.size()) != d || !p.allFinite())
            throw DegenerateInput("convex_hull: bad point");
    if (static_cast<int>(input.size()) < d + 1)
        throw DegenerateInput("convex_hull: need at least d+1 points");

    double scale = 1.0;
    for (const auto& p : input) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    const double eps = tol.len_eps(scale);

    // Dedupe coincident points.
    std::vector<Vec> pts;
    for (const auto& p : input) {
        bool dup = false;
        for (const auto& q : pts)
            if ((p - q).norm() <= eps) { dup = true; break; }
        if (!dup) pts.push_back(p);
    }

    // Keep extreme points only; membership in the hull of the rest is a
    // convex feasibility problem.
    std::vector<Vec> ext;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Vec> others;
        others.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!in_convex_hull(pts[i], others, eps)) ext.push_back(pts[i]);
    }
    std::sort(ext.begin(), ext.end(), lex_less);

    if (static_cast<int>(ext.size()) < d + 1)
        throw DegenerateInput("convex_hull: input is not full-dimensional");

    std::vector<int> init = initial_simplex(ext, d, eps);
    if (init.empty())
        throw DegenerateInput("convex_hull: input is not full-dimensional");

    Vec interior = Vec::Zero(d);
    for (int id : init) interior += ext[id];
    interior /= static_cast<double>(init.size());

    // Incremental insertion over simplicial facets.
    std::vector<SimplicialFacet> facets;
    for (int skip = 0; skip <= d; ++skip) {
        std::vector<int> f;
        for (int i = 0; i <= d; ++i)
            if (i != skip) f.push_back(init[i]);
        std::sort(f.begin(), f.end());
        facets.push_back({f, plane_through(ext, f, interior, tol), true});
    }

    std::vector<bool> inserted(ext.size(), false);
    for (int id : init) inserted[id] = true;

    for (int p = 0; p < static_cast<int>(ext.size()); ++p) {
        if (inserted[p]) continue;
        inserted[p] = true;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(facets.size()); ++f)
            if (facets[f].alive && facets[f].plane.eval(ext[p]) > eps)
                visible.push_back(f);
        if (visible.empty()) continue;  // within tolerance of the current hull

        // Horizon ridges appear exactly once among visible facets.
        std::map<std::vector<int>, int> ridge_count;
        for (int f : visible) {
            for (int v : facets[f].vtx) {
                auto ridge = ridge_of(facets[f].vtx, v);
                ridge_count[ridge] += 1;
            }
        }
        for (int f : visible) facets[f].alive = false;
        for (const auto& [ridge, count] : ridge_count) {
            if (count != 1) continue;
            std::vector<int> nf = ridge;
            nf.push_back(p);
            std::sort(nf.begin(), nf.end());
            facets.push_back({nf, plane_through(ext, nf, interior, tol), true});
        }
    }

    // Merge coplanar simplicial facets into true facets. Adjacent facets with
    // near-identical planes (angle <= 1e-8 rad) get unioned.
    std::vector<int> live;
    for (int f = 0; f < static_cast<int>(facets.size()); ++f)
        if (facets[f].alive) live.push_back(f);

    std::map<std::vector<int>, std::vector<int>> by_ridge;
    for (int li = 0; li < static_cast<int>(live.size()); ++li) {
        const auto& fv = facets[live[li]].vtx;
        for (int v : fv) by_ridge[ridge_of(fv, v)].push_back(li);
    }

    std::vector<int> group(live.size());
    std::iota(group.begin(), group.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (group[a] != a) a = group[a] = group[group[a]];
        return a;
    };
    const double merge_angle = 1e-8;
    for (const auto& [ridge, fs] : by_ridge) {
        if (fs.size() != 2) continue;
        const auto& pa = facets[live[fs[0]]].plane;
        const auto& pb = facets[live[fs[1]]].plane;
        if ((pa.normal - pb.normal).norm() <= merge_angle &&
            std::abs(pa.offset - pb.offset) <= eps)
            group[find(fs[0])] = find(fs[1]);
    }

    std::map<int, std::set<int>> merged;
    std::map<int, int> rep_facet;
    for (int li = 0; li < static_cast<int>(live.size()); ++li) {
        int g = find(li);
        auto& s = merged[g];
        for (int v : facets[live[li]].vtx) s.insert(v);
        if (!rep_facet.count(g)) rep_facet[g] = live[li];
    }

    Polytope out;
    out.dim = d;
    out.vertices = ext;
    for (const auto& [g, vs] : merged) {
        Facet fa;
        fa.plane = facets[rep_facet[g]].plane;
        fa.vertex_ids.assign(vs.begin(), vs.end());
        out.facets.push_back(std::move(fa));
    }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const Facet& a, const Facet& b) {
                  if (lex_less(a.plane.normal, b.plane.normal)) return true;
                  if (lex_less(b.plane.normal, a.plane.normal)) return false;
                  return a.plane.offset < b.plane.offset;
              });

    // 1-faces: {v, w} is an edge iff the vertices lying on every facet
    // common to v and w are exactly {v, w}.
    const int nv = static_cast<int>(out.vertices.size());
    std::vector<std::set<int>> fac_of(nv);
    for (int f = 0; f < static_cast<int>(out.facets.size()); ++f)
        for (int v : out.facets[f].vertex_ids) fac_of[v].insert(f);
    for (int v = 0; v < nv; ++v) {
        for (int w = v + 1; w < nv; ++w) {
            std::vector<int> common;
            std::set_intersection(fac_of[v].begin(), fac_of[v].end(),
                                  fac_of[w].begin(), fac_of[w].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            bool edge = true;
            for (int u = 0; u < nv && edge; ++u) {
                if (u == v || u == w) continue;
                bool in_all = true;
                for (int f : common)
                    if (!fac_of[u].count(f)) { in_all = false; break; }
                if (in_all) edge = false;
            }
            if (edge) out.edges.emplace_back(v, w);
        }
    }
    return out;
}

std::vector<Hyperplane> facet_planes(const Polytope& P) {
    std::vector<Hyperplane> planes;
    planes.reserve(P.facets.size());
    for (const auto& f : P.facets) planes.push_back(f.plane);
    return planes;
}

std::vector<int> visible_facets(const Vec& z, const Polytope& P,
                                const Tolerance& tol) {
    if (static_cast<int>(z.size()) != P.dim)
        throw DegenerateInput("visible_facets: dimension mismatch");
    const double eps = tol.len_eps(std::max(1.0, z.norm()));
    std::vector<int> vis;
    for (int f = 0; f < static_cast<int>(P.facets.size()); ++f) {
        double e = P.facets[f].plane.eval(z);
        if (std::abs(e) <= eps)
            throw RegionBoundary("visible_facets: z on facet plane " + std::to_string(f));
        if (e > eps) vis.push_back(f);
    }
    if (vis.empty()) throw InsidePolytope("visible_facets: z inside the polytope");
    return vis;
}

Polytope random_polytope(std::uint64_t seed, int d, int n_points,
                         double radius_cap, const Tolerance& tol) {
    if (n_points < d + 1)
        throw DegenerateInput("random_polytope: need at least d+1 points");
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        auto rng = make_rng(seed, attempt);
        std::vector<Vec> pts;
        pts.reserve(n_points);
        for (int i = 0; i < n_points; ++i)
            pts.push_back(random_in_ball(rng, d, radius_cap));
        try {
            return convex_hull(pts, d, tol);
        } catch (const DegenerateInput&) {
            continue;  // redraw
        }
    }
    throw DegenerateInput("random_polytope: degenerate draws exhausted retries");
}

void validate_polytope(const Polytope& P, const Tolerance& tol) {
    const int d = P.dim;
    if (d < 2) throw DegenerateInput("validate: dim < 2");
    if (static_cast<int>(P.vertices.size()) < d + 1)
        throw DegenerateInput("validate: fewer than d+1 vertices");
    double scale = std::max(1.0, P.max_vertex_norm());
    const double eps = tol.len_eps(scale);

    for (const auto& v : P.vertices)
        if (static_cast<int>(v.size()) != d || !v.allFinite())
            throw DegenerateInput("validate: bad vertex");

    // Extremeness of every vertex.
    for (std::size_t i = 0; i < P.vertices.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < P.vertices.size(); ++j)
            if (j != i) others.push_back(P.vertices[j]);
        if (in_convex_hull(P.vertices[i], others, eps))
            throw DegenerateInput("validate: vertex " + std::to_string(i) + " not extreme");
    }

    // Supporting planes: unit normal, all vertices inside, incident on plane.
    for (const auto& f : P.facets) {
        if (std::abs(f.plane.normal.norm() - 1.0) > eps)
            throw DegenerateInput("validate: non-unit facet normal");
        for (int id = 0; id < static_cast<int>(P.vertices.size()); ++id) {
            double e = f.plane.eval(P.vertices[id]);
            if (e > eps) throw DegenerateInput("validate: vertex outside facet plane");
        }
        if (static_cast<int>(f.vertex_ids.size()) < d)
            throw DegenerateInput("validate: facet with fewer than d vertices");
        for (int id : f.vertex_ids)
            if (std::abs(f.plane.eval(P.vertices[id])) > eps)
                throw DegenerateInput("validate: facet vertex off its plane");
    }

    // Edge consistency: every edge pair shares at least one facet, and in
    // d=3 Euler's relation pins the counts.
    std::vector<std::set<int>> fac_of(P.vertices.size());
    for (int f = 0; f < static_cast<int>(P.facets.size()); ++f)
        for (int v : P.facets[f].vertex_ids) fac_of[v].insert(f);
    for (const auto& [a, b] : P.edges) {
        std::vector<int> common;
        std::set_intersection(fac_of[a].begin(), fac_of[a].end(),
                              fac_of[b].begin(), fac_of[b].end(),
                              std::back_inserter(common));
        if (common.empty())
            throw DegenerateInput("validate: edge endpoints share no facet");
    }
    if (d == 3) {
        long V = static_cast<long>(P.vertices.size());
        long E = static_cast<long>(P.edges.size());
        long F = static_cast<long>(P.facets.size());
        if (V - E + F != 2) throw DegenerateInput("validate: Euler relation fails");
    }
}

void validate_scene(const Scene& scene, const Tolerance& tol) {
    if (!(scene.r > 0)) throw DegenerateInput("scene: r must be positive");
    const double bound = scene.r * (1.0 - 1e-6);
    for (const auto& P : scene.polytopes) {
        validate_polytope(P, tol);
        if (P.max_vertex_norm() > bound)
            throw DegenerateInput("scene: polytope not strictly interior");
    }
    for (const auto& B : scene.balls) {
        if (!(B.radius > 0)) throw DegenerateInput("scene: ball radius must be positive");
        if (B.center.norm() + B.radius > bound)
            throw DegenerateInput("scene: ball not strictly interior");
    }
}

Polytope translated(const Polytope& P, const Vec& t, const Tolerance& tol) {
    std::vector<Vec> pts;
    pts.reserve(P.vertices.size());
    for (const auto& v : P.vertices) pts.push_back(v + t);
    return convex_hull(pts, P.dim, tol);
}

Polytope transformed(const Polytope& P, const Mat& R, const Tolerance& tol) {
    std::vector<Vec> pts;
    pts.reserve(P.vertices.size());
    for (const auto& v : P.vertices) pts.push_back(R * v);
    return convex_hull(pts, P.dim, tol);
}

bool same_vertex_set(const Polytope& P, const Polytope& Q, double eps) {
    if (P.vertices.size() != Q.vertices.size()) return false;
    std::vector<bool> used(Q.vertices.size(), false);
    for (const auto& v : P.vertices) {
        bool found = false;
        for (std::size_t j = 0; j < Q.vertices.size(); ++j) {
            if (!used[j] && (v - Q.vertices[j]).norm() <= eps) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace sightcone
