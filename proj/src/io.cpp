#include "sightcone/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sightcone {

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vec vec_from_json(const json& a) {
    Vec v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
    return v;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

Scene scene_from_json(const json& j, const Tolerance& tol) {
    Scene scene;
    scene.r = j.at("r").get<double>();
    if (j.contains("polytopes"))
        for (const auto& pj : j.at("polytopes")) {
            const auto& vj = pj.at("vertices");
            if (vj.empty()) throw DegenerateInput("scene: polytope without vertices");
            std::vector<Vec> pts;
            for (const auto& row : vj) pts.push_back(vec_from_json(row));
            scene.polytopes.push_back(
                convex_hull(pts, static_cast<int>(pts.front().size()), tol));
        }
    if (j.contains("balls"))
        for (const auto& bj : j.at("balls"))
            scene.balls.push_back(
                Ball{vec_from_json(bj.at("center")), bj.at("radius").get<double>()});
    validate_scene(scene, tol);
    return scene;
}

json scene_to_json(const Scene& scene) {
    json j;
    j["r"] = scene.r;
    j["polytopes"] = json::array();
    for (const auto& P : scene.polytopes) {
        json verts = json::array();
        for (const auto& v : P.vertices) verts.push_back(vec_to_json(v));
        j["polytopes"].push_back({{"vertices", verts}});
    }
    j["balls"] = json::array();
    for (const auto& b : scene.balls)
        j["balls"].push_back({{"center", vec_to_json(b.center)}, {"radius", b.radius}});
    return j;
}

Scene load_scene(const std::string& path, const Tolerance& tol) {
    return scene_from_json(json::parse(read_text_file(path)), tol);
}

json cone_to_json(const SupportCone& cone) {
    json j;
    j["apex"] = vec_to_json(cone.apex);
    j["directions"] = json::array();
    for (const auto& d : cone.directions) j["directions"].push_back(vec_to_json(d));
    j["boundary_vertex_ids"] = cone.boundary_vertex_ids;
    j["faces2"] = json::array();
    for (auto [a, b] : cone.faces2) j["faces2"].push_back({a, b});
    return j;
}

json projection_to_json(const SphericalPolytope& sp) {
    json j;
    j["r"] = sp.r;
    j["source"] = vec_to_json(sp.source_apex);
    j["vertices"] = json::array();
    for (const auto& v : sp.vertices) j["vertices"].push_back(vec_to_json(v));
    j["arcs"] = json::array();
    for (const auto& a : sp.arcs)
        j["arcs"].push_back({{"i", a.i},
                             {"j", a.j},
                             {"circle_center", vec_to_json(a.circle_center)},
                             {"circle_radius", a.circle_radius}});
    return j;
}

json witness_to_json(const CongruenceWitness& w) {
    json j;
    j["permutation"] = w.permutation;
    json m = json::array();
    for (int i = 0; i < w.map.matrix.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < w.map.matrix.cols(); ++c) row.push_back(w.map.matrix(i, c));
        m.push_back(row);
    }
    j["map"] = m;
    j["residual"] = w.residual;
    return j;
}

json verdict_to_json(const Verdict& v) {
    json j;
    switch (v.kind) {
    case VerdictKind::Equal: j["verdict"] = "equal"; break;
    case VerdictKind::Distinct: j["verdict"] = "distinct"; break;
    case VerdictKind::Inconclusive: j["verdict"] = "inconclusive"; break;
    }
    j["witness"] = v.witness ? vec_to_json(*v.witness) : json(nullptr);
    j["regions"] = json::array();
    for (const auto& s : v.regions)
        j["regions"].push_back(
            {{"signs", sign_string(s.signs)},
             {"permutation", s.permutation ? json(*s.permutation) : json(nullptr)},
             {"residual", s.residual}});
    j["max_residual"] = v.max_residual;
    j["note"] = v.note;
    return j;
}

json counterexample_to_json(const CounterexampleReport& rep) {
    auto shape = [](const ConeShape& s) {
        json j;
        switch (s.kind) {
        case ConeShapeKind::Circular: j["kind"] = "circular"; break;
        case ConeShapeKind::Elliptical: j["kind"] = "elliptical"; break;
        case ConeShapeKind::Other: j["kind"] = "other"; break;
        }
        j["axis_ratio"] = s.axis_ratio;
        return j;
    };
    json j;
    j["radius_s1"] = rep.radius_s1;
    j["radius_s2"] = rep.radius_s2;
    j["circles_congruent"] = rep.circles_congruent;
    j["c1"] = shape(rep.c1);
    j["c2"] = shape(rep.c2);
    j["cones_congruent"] = rep.cones_congruent;
    return j;
}

std::vector<AngleSample> angle_samples_from_csv(const std::string& text) {
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        s.erase(0, s.find_first_not_of(ws));
        s.erase(s.find_last_not_of(ws) + 1);
        return s;
    };
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<AngleSample> out;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            std::string h;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) h += c;
            if (h != "zx,zy,alpha")
                throw DegenerateInput("angle csv: expected header zx,zy,alpha");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(row, cell, ','))
                throw DegenerateInput("angle csv: row with fewer than 3 fields");
            vals[c] = std::stod(trim(cell));
        }
        Vec z(2);
        z << vals[0], vals[1];
        out.push_back({z, vals[2]});
    }
    if (!header_seen) throw DegenerateInput("angle csv: empty input");
    return out;
}

std::vector<AngleSample> load_angle_csv(const std::string& path) {
    return angle_samples_from_csv(read_text_file(path));
}

std::string obj_export(const Scene& scene, const std::optional<Vec>& z,
                       int segments, const Tolerance& tol) {
    for (const auto& P : scene.polytopes)
        if (P.dim != 3) throw DegenerateInput("obj export needs dimension 3");
    if (z && z->size() != 3) throw DegenerateInput("obj export needs dimension 3");
    if (segments < 2) throw DegenerateInput("obj export: too few segments");

    std::ostringstream obj;
    obj << "# wireframe export, radius " << fmt(scene.r) << "\n";
    int next = 1;
    auto emit = [&](const Vec& p) {
        obj << "v " << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << "\n";
        return next++;
    };

    auto circle3 = [&](const Vec& center, const Vec& normal, double rho,
                       const std::string& name) {
        Vec u = Vec::Zero(3);
        int least = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(normal[i]) < std::abs(normal[least])) least = i;
        u[least] = 1.0;
        u = (u - u.dot(normal) * normal).normalized();
        Vec v(3);
        v << normal[1] * u[2] - normal[2] * u[1], normal[2] * u[0] - normal[0] * u[2],
            normal[0] * u[1] - normal[1] * u[0];
        obj << "o " << name << "\n";
        std::vector<int> ids;
        for (int k = 0; k < segments; ++k) {
            double t = 2.0 * std::acos(-1.0) * k / segments;
            ids.push_back(emit(center + rho * (std::cos(t) * u + std::sin(t) * v)));
        }
        obj << "l";
        for (int id : ids) obj << ' ' << id;
        obj << ' ' << ids.front() << "\n";
    };

    for (int axis = 0; axis < 3; ++axis) {
        Vec n = Vec::Zero(3);
        n[axis] = 1.0;
        circle3(Vec::Zero(3), n, scene.r, "sphere_circle_" + std::to_string(axis));
    }

    for (size_t k = 0; k < scene.polytopes.size(); ++k) {
        const auto& P = scene.polytopes[k];
        obj << "o polytope_" << k << "\n";
        std::vector<int> ids;
        for (const auto& v : P.vertices) ids.push_back(emit(v));
        for (auto [a, b] : P.edges) obj << "l " << ids[a] << ' ' << ids[b] << "\n";

        if (z) {
            SphericalPolytope sp = spherical_projection(*z, P, scene.r, tol);
            obj << "o cone_" << k << "\n";
            int apex = emit(*z);
            std::vector<int> hits;
            for (const auto& v : sp.vertices) hits.push_back(emit(v));
            for (int h : hits) obj << "l " << apex << ' ' << h << "\n";
            obj << "o projection_" << k << "\n";
            for (const auto& arc : sp.arcs) {
                auto pts = arc_polyline(*z, sp.vertices[arc.i], sp.vertices[arc.j],
                                        scene.r, segments, tol);
                obj << "l";
                for (const auto& p : pts) obj << ' ' << emit(p);
                obj << "\n";
            }
        }
    }

    if (z)
        for (size_t k = 0; k < scene.balls.size(); ++k) {
            SphericalCap cap = ball_cap(*z, scene.balls[k], scene.r, tol);
            circle3(scene.r * std::cos(cap.angular_radius) * cap.center_dir,
                    cap.center_dir, scene.r * std::sin(cap.angular_radius),
                    "cap_" + std::to_string(k));
        }
    return obj.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

} // namespace sightcone
