#include "sightcone/cone.hpp"

#include "sightcone/nnls.hpp"

#include <algorithm>
#include <cmath>
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

/// Candidate shadow-boundary vertices: incident to at least one visible and
/// one invisible facet. Collinear candidates (same ray from z) keep only the
/// nearest vertex.
std::vector<int> boundary_candidates(const Vec& z, const Polytope& P,
                                     const Tolerance& tol) {
    std::vector<int> vis = visible_facets(z, P, tol);
    std::set<int> vis_set(vis.begin(), vis.end());
    std::vector<char> on_visible(P.vertices.size(), 0), on_invisible(P.vertices.size(), 0);
    for (int f = 0; f < static_cast<int>(P.facets.size()); ++f) {
        bool v = vis_set.count(f) > 0;
        for (int id : P.facets[f].vertex_ids)
            (v ? on_visible : on_invisible)[id] = 1;
    }
    std::vector<int> cand;
    for (int id = 0; id < static_cast<int>(P.vertices.size()); ++id)
        if (on_visible[id] && on_invisible[id]) cand.push_back(id);
    return cand;
}

std::vector<int> dedupe_collinear(const Vec& z, const Polytope& P,
                                  const std::vector<int>& cand, double eps) {
    std::vector<int> keep;
    for (int id : cand) {
        Vec u = (P.vertices[id] - z).normalized();
        bool merged = false;
        for (int& k : keep) {
            Vec w = (P.vertices[k] - z).normalized();
            if ((u - w).norm() <= eps) {
                if ((P.vertices[id] - z).norm() < (P.vertices[k] - z).norm()) k = id;
                merged = true;
                break;
            }
        }
        if (!merged) keep.push_back(id);
    }
    return keep;
}

/// The inward direction -n of the most visible facet: every vertex direction
/// from z has strictly positive dot with it, so it cuts a bounded
/// cross-section of the cone.
Vec section_axis(const Vec& z, const Polytope& P, const Tolerance& tol) {
    std::vector<int> vis = visible_facets(z, P, tol);
    int best = vis.front();
    double best_eval = P.facets[best].plane.eval(z);
    for (int f : vis) {
        double e = P.facets[f].plane.eval(z);
        if (e > best_eval) { best_eval = e; best = f; }
    }
    return -P.facets[best].plane.normal;
}

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
              const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Andrew monotone chain; returns input indices of the strictly convex hull
/// corners in counterclockwise order.
std::vector<int> polygon_hull(const std::vector<Eigen::Vector2d>& pts, double eps_area) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
        return pts[a].y() < pts[b].y();
    });
    auto build = [&](bool lower) {
        std::vector<int> chain;
        for (int oi = 0; oi < n; ++oi) {
            int i = order[lower ? oi : n - 1 - oi];
            while (chain.size() >= 2 &&
                   cross2(pts[chain[chain.size() - 2]], pts[chain.back()], pts[i]) <= eps_area)
                chain.pop_back();
            chain.push_back(i);
        }
        chain.pop_back();
        return chain;
    };
    std::vector<int> hull = build(true);
    std::vector<int> upper = build(false);
    hull.insert(hull.end(), upper.begin(), upper.end());
    return hull;
}

} // namespace

SupportCone support_cone(const Vec& z, const Polytope& P, const Tolerance& tol) {
    const int d = P.dim;
    const double eps = tol.len_eps(std::max(1.0, z.norm()));
    std::vector<int> cand = boundary_candidates(z, P, tol);
    cand = dedupe_collinear(z, P, cand, eps);
    if (static_cast<int>(cand.size()) < d)
        throw DegenerateInput("support_cone: fewer than d boundary candidates");

    Vec axis = section_axis(z, P, tol);
    std::vector<Vec> dirs(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i)
        dirs[i] = (P.vertices[cand[i]] - z).normalized();

    // Cross-section of the cone by {x : x.axis = 1}, in an orthonormal basis
    // of the complement of the axis.
    Eigen::HouseholderQR<Mat> qr{Mat(axis)};
    Mat Q = qr.householderQ();
    if (Q.col(0).dot(axis) < 0) Q = -Q;
    Mat E = Q.rightCols(d - 1);

    std::vector<int> selected;                       // indices into cand
    std::vector<std::pair<int, int>> faces2_local;   // pairs into selected

    if (d == 3) {
        // Orient the planar basis so increasing polar angle is
        // counterclockwise as seen from the apex.
        Vec e1 = E.col(0), e2 = E.col(1);
        Eigen::Vector3d a3(axis[0], axis[1], axis[2]);
        Eigen::Vector3d v1(e1[0], e1[1], e1[2]);
        Eigen::Vector3d v2 = -a3.cross(v1);
        double sc = 1.0;
        Eigen::Vector3d e2v(e2[0], e2[1], e2[2]);
        if (e2v.dot(v2) < 0) sc = -1.0;
        std::vector<Eigen::Vector2d> proj(cand.size());
        double scale = 1.0;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            double t = dirs[i].dot(axis);
            Vec q = dirs[i] / t;
            proj[i] = {q.dot(e1), sc * q.dot(e2)};
            scale = std::max(scale, proj[i].norm());
        }
        std::vector<int> cyc = polygon_hull(proj, tol.eps_abs * scale * scale * 100.0);
        selected = cyc;
        for (std::size_t i = 0; i < cyc.size(); ++i)
            faces2_local.emplace_back(static_cast<int>(i),
                                      static_cast<int>((i + 1) % cyc.size()));
    } else {
        std::vector<Vec> proj(cand.size());
        for (std::size_t i = 0; i < cand.size(); ++i) {
            double t = dirs[i].dot(axis);
            proj[i] = E.transpose() * (dirs[i] / t);
        }
        Polytope section = convex_hull(proj, d - 1, tol);
        double scale = 1.0;
        for (const auto& p : proj) scale = std::max(scale, p.norm());
        const double match_eps = tol.len_eps(scale);
        std::vector<int> back(section.vertices.size(), -1);
        for (std::size_t sv = 0; sv < section.vertices.size(); ++sv) {
            for (std::size_t i = 0; i < proj.size(); ++i) {
                if ((section.vertices[sv] - proj[i]).norm() <= match_eps) {
                    back[sv] = static_cast<int>(i);
                    break;
                }
            }
            if (back[sv] < 0)
                throw DegenerateInput("support_cone: cross-section vertex unmatched");
        }
        selected.assign(back.begin(), back.end());
        for (const auto& [a, b] : section.edges) faces2_local.emplace_back(a, b);
    }

    // Canonical ordering of the selected rays.
    std::vector<int> perm(selected.size());
    std::iota(perm.begin(), perm.end(), 0);
    if (d == 3) {
        // Rotate the cycle to start at the lexicographically smallest vertex.
        int start = 0;
        for (std::size_t i = 1; i < selected.size(); ++i)
            if (lex_less(P.vertices[cand[selected[i]]], P.vertices[cand[selected[start]]]))
                start = static_cast<int>(i);
        std::rotate(perm.begin(), perm.begin() + start, perm.end());
    } else {
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            return lex_less(P.vertices[cand[selected[a]]], P.vertices[cand[selected[b]]]);
        });
    }
    std::vector<int> inv(selected.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);

    SupportCone cone;
    cone.apex = z;
    for (int pi : perm) {
        cone.directions.push_back(dirs[selected[pi]]);
        cone.boundary_vertex_ids.push_back(cand[selected[pi]]);
    }
    for (const auto& [a, b] : faces2_local) {
        int ia = inv[a], ib = inv[b];
        cone.faces2.emplace_back(std::min(ia, ib), std::max(ia, ib));
    }
    std::sort(cone.faces2.begin(), cone.faces2.end());
    return cone;
}

std::vector<int> shadow_boundary(const Vec& z, const Polytope& P,
                                 const Tolerance& tol) {
    SupportCone cone = support_cone(z, P, tol);
    std::vector<int> ids = cone.boundary_vertex_ids;
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<Vec> spanning_directions_extremal(const Vec& z, const Polytope& P,
                                              const Tolerance& tol) {
    // Classify z first so region-boundary and interior cases fail the same
    // way as the visibility route.
    (void)visible_facets(z, P, tol);
    const double eps = tol.len_eps(std::max(1.0, z.norm()));

    std::vector<Vec> dirs;
    for (const auto& v : P.vertices) {
        Vec u = (v - z).normalized();
        bool merged = false;
        for (const auto& w : dirs) {
            if ((u - w).norm() <= eps) { merged = true; break; }
        }
        if (!merged) dirs.push_back(u);
    }

    std::vector<Vec> extreme;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < dirs.size(); ++j)
            if (j != i) others.push_back(dirs[j]);
        if (!in_conical_hull(dirs[i], others, 10.0 * tol.eps_abs))
            extreme.push_back(dirs[i]);
    }
    return extreme;
}

bool same_direction_set(const std::vector<Vec>& a, const std::vector<Vec>& b,
                        double eps) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& u : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && (u - b[j]).norm() <= eps) {
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
