#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sightcone/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace sightcone;

PYBIND11_MODULE(_core, m) {
    m.doc() = "sight cones, spherical projections, and congruence checks "
              "for convex bodies inside a sphere";

    auto err = py::register_exception<Error>(m, "Error");
    py::register_exception<RegionBoundary>(m, "RegionBoundary", err.ptr());
    py::register_exception<InsidePolytope>(m, "InsidePolytope", err.ptr());

    py::class_<Tolerance>(m, "Tolerance")
        .def(py::init<>())
        .def_readwrite("eps_abs", &Tolerance::eps_abs)
        .def_readwrite("eps_rel", &Tolerance::eps_rel)
        .def_readwrite("residual_max", &Tolerance::residual_max);

    py::class_<Hyperplane>(m, "Hyperplane")
        .def(py::init([](Vec n, double off) { return Hyperplane{std::move(n), off}; }),
             py::arg("normal"), py::arg("offset"))
        .def_readwrite("normal", &Hyperplane::normal)
        .def_readwrite("offset", &Hyperplane::offset)
        .def("eval", &Hyperplane::eval);

    py::class_<Facet>(m, "Facet")
        .def_readonly("plane", &Facet::plane)
        .def_readonly("vertex_ids", &Facet::vertex_ids);

    py::class_<Polytope>(m, "Polytope")
        .def_readonly("dim", &Polytope::dim)
        .def_readonly("vertices", &Polytope::vertices)
        .def_readonly("facets", &Polytope::facets)
        .def_readonly("edges", &Polytope::edges)
        .def("contains", &Polytope::contains, py::arg("x"), py::arg("eps"))
        .def("__repr__", [](const Polytope& p) {
            return "Polytope(dim=" + std::to_string(p.dim) +
                   ", vertices=" + std::to_string(p.vertices.size()) +
                   ", facets=" + std::to_string(p.facets.size()) + ")";
        });

    py::class_<Ball>(m, "Ball")
        .def(py::init([](Vec c, double rho) { return Ball{std::move(c), rho}; }),
             py::arg("center"), py::arg("radius"))
        .def_readwrite("center", &Ball::center)
        .def_readwrite("radius", &Ball::radius);

    py::class_<Scene>(m, "Scene")
        .def(py::init([](double r, std::vector<Polytope> ps, std::vector<Ball> bs) {
                 return Scene{r, std::move(ps), std::move(bs)};
             }),
             py::arg("r") = 1.0, py::arg("polytopes") = std::vector<Polytope>{},
             py::arg("balls") = std::vector<Ball>{})
        .def_readwrite("r", &Scene::r)
        .def_readwrite("polytopes", &Scene::polytopes)
        .def_readwrite("balls", &Scene::balls);

    py::class_<SupportCone>(m, "SupportCone")
        .def_readonly("apex", &SupportCone::apex)
        .def_readonly("directions", &SupportCone::directions)
        .def_readonly("boundary_vertex_ids", &SupportCone::boundary_vertex_ids)
        .def_readonly("faces2", &SupportCone::faces2)
        .def("spanning_count", &SupportCone::spanning_count);

    py::class_<Arc>(m, "Arc")
        .def_readonly("i", &Arc::i)
        .def_readonly("j", &Arc::j)
        .def_readonly("circle_center", &Arc::circle_center)
        .def_readonly("circle_radius", &Arc::circle_radius);

    py::class_<SphericalPolytope>(m, "SphericalPolytope")
        .def_readonly("r", &SphericalPolytope::r)
        .def_readonly("vertices", &SphericalPolytope::vertices)
        .def_readonly("arcs", &SphericalPolytope::arcs)
        .def_readonly("source_apex", &SphericalPolytope::source_apex);

    py::class_<SphericalCap>(m, "SphericalCap")
        .def_readonly("center_dir", &SphericalCap::center_dir)
        .def_readonly("angular_radius", &SphericalCap::angular_radius);

    py::class_<OrthoMap>(m, "OrthoMap")
        .def_readonly("matrix", &OrthoMap::matrix)
        .def("det", &OrthoMap::det)
        .def("apply", &OrthoMap::apply);

    py::class_<CongruenceWitness>(m, "CongruenceWitness")
        .def_readonly("permutation", &CongruenceWitness::permutation)
        .def_readonly("map", &CongruenceWitness::map)
        .def_readonly("residual", &CongruenceWitness::residual);

    py::enum_<ConeShapeKind>(m, "ConeShapeKind")
        .value("Circular", ConeShapeKind::Circular)
        .value("Elliptical", ConeShapeKind::Elliptical)
        .value("Other", ConeShapeKind::Other);

    py::class_<ConeShape>(m, "ConeShape")
        .def_readonly("kind", &ConeShape::kind)
        .def_readonly("axis_ratio", &ConeShape::axis_ratio);

    py::enum_<VerifyMode>(m, "VerifyMode")
        .value("Cones", VerifyMode::Cones)
        .value("Projections", VerifyMode::Projections);

    py::enum_<VerdictKind>(m, "VerdictKind")
        .value("Equal", VerdictKind::Equal)
        .value("Distinct", VerdictKind::Distinct)
        .value("Inconclusive", VerdictKind::Inconclusive);

    py::class_<RegionSummary>(m, "RegionSummary")
        .def_readonly("signs", &RegionSummary::signs)
        .def_readonly("permutation", &RegionSummary::permutation)
        .def_readonly("residual", &RegionSummary::residual);

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("kind", &Verdict::kind)
        .def_readonly("witness", &Verdict::witness)
        .def_readonly("regions", &Verdict::regions)
        .def_readonly("max_residual", &Verdict::max_residual)
        .def_readonly("note", &Verdict::note)
        .def("__repr__", [](const Verdict& v) {
            const char* k = v.kind == VerdictKind::Equal      ? "Equal"
                            : v.kind == VerdictKind::Distinct ? "Distinct"
                                                              : "Inconclusive";
            return std::string("Verdict(") + k + ")";
        });

    py::class_<RegionReport>(m, "RegionReport")
        .def_readonly("sign_vector", &RegionReport::sign_vector)
        .def_readonly("representative", &RegionReport::representative)
        .def_readonly("sample_count", &RegionReport::sample_count)
        .def_readonly("stable_permutation", &RegionReport::stable_permutation);

    py::class_<AngleSample>(m, "AngleSample")
        .def(py::init([](Vec z, double a) { return AngleSample{std::move(z), a}; }),
             py::arg("z"), py::arg("alpha"))
        .def_readwrite("z", &AngleSample::z)
        .def_readwrite("alpha", &AngleSample::alpha);

    py::class_<CounterexampleReport>(m, "CounterexampleReport")
        .def_readonly("radius_s1", &CounterexampleReport::radius_s1)
        .def_readonly("radius_s2", &CounterexampleReport::radius_s2)
        .def_readonly("circles_congruent", &CounterexampleReport::circles_congruent)
        .def_readonly("c1", &CounterexampleReport::c1)
        .def_readonly("c2", &CounterexampleReport::c2)
        .def_readonly("cones_congruent", &CounterexampleReport::cones_congruent);

    m.def("convex_hull", &convex_hull, py::arg("points"), py::arg("d"),
          py::arg("tol") = Tolerance{});
    m.def("random_polytope", &random_polytope, py::arg("seed"), py::arg("d"),
          py::arg("n_points"), py::arg("radius_cap"), py::arg("tol") = Tolerance{});
    m.def("translated", &translated, py::arg("p"), py::arg("t"),
          py::arg("tol") = Tolerance{});
    m.def("transformed", &transformed, py::arg("p"), py::arg("r"),
          py::arg("tol") = Tolerance{});
    m.def("same_vertex_set", &same_vertex_set, py::arg("p"), py::arg("q"),
          py::arg("eps"));

    m.def("support_cone", &support_cone, py::arg("z"), py::arg("p"),
          py::arg("tol") = Tolerance{});
    m.def("shadow_boundary", &shadow_boundary, py::arg("z"), py::arg("p"),
          py::arg("tol") = Tolerance{});
    m.def("spanning_directions_extremal", &spanning_directions_extremal,
          py::arg("z"), py::arg("p"), py::arg("tol") = Tolerance{});

    m.def("spherical_projection", &spherical_projection, py::arg("z"),
          py::arg("p"), py::arg("r"), py::arg("tol") = Tolerance{});
    m.def("arc_circle", &arc_circle, py::arg("z"), py::arg("x"), py::arg("y"),
          py::arg("r"), py::arg("tol") = Tolerance{});
    m.def("angle", &angle, py::arg("z"), py::arg("x"), py::arg("y"),
          py::arg("tol") = Tolerance{});
    m.def("ball_cap", &ball_cap, py::arg("z"), py::arg("b"), py::arg("r"),
          py::arg("tol") = Tolerance{});
    m.def("arc_polyline", &arc_polyline, py::arg("z"), py::arg("p"),
          py::arg("q"), py::arg("r"), py::arg("n_segments"),
          py::arg("tol") = Tolerance{});

    m.def("cone_congruent", &cone_congruent, py::arg("a"), py::arg("b"),
          py::arg("tol") = Tolerance{});
    m.def("spherical_congruent", &spherical_congruent, py::arg("s1"),
          py::arg("s2"), py::arg("tol") = Tolerance{});
    m.def("cone_shape_classify", &cone_shape_classify, py::arg("directions"),
          py::arg("tol") = Tolerance{});

    m.def("sphere_samples", &sphere_samples, py::arg("n"), py::arg("dim"),
          py::arg("r"), py::arg("seed"));
    m.def("sample_regions", &sample_regions, py::arg("scene"),
          py::arg("n_samples"), py::arg("seed"), py::arg("tol") = Tolerance{});

    m.def("verify_pair", &verify_pair, py::arg("p"), py::arg("q"), py::arg("r"),
          py::arg("mode"), py::arg("n_samples") = 500, py::arg("seed") = 0,
          py::arg("tol") = Tolerance{});
    m.def("verify_balls", &verify_balls, py::arg("k"), py::arg("l"),
          py::arg("r"), py::arg("tol") = Tolerance{});
    m.def("recover_segment",
          py::overload_cast<const std::vector<AngleSample>&, double,
                            std::uint64_t, const Tolerance&>(&recover_segment),
          py::arg("samples"), py::arg("r"), py::arg("seed") = 0,
          py::arg("tol") = Tolerance{});
    m.def("recover_segment",
          py::overload_cast<const std::vector<AngleSample>&, const Mat&, double,
                            std::uint64_t, const Tolerance&>(&recover_segment),
          py::arg("samples"), py::arg("basis"), py::arg("r"),
          py::arg("seed") = 0, py::arg("tol") = Tolerance{});
    m.def("counterexample_report", &counterexample_report,
          py::arg("tol") = Tolerance{});

    m.def("load_scene", &load_scene, py::arg("path"), py::arg("tol") = Tolerance{});
    m.def("scene_to_json",
          [](const Scene& s) { return scene_to_json(s).dump(2); }, py::arg("scene"));
    m.def("scene_from_json",
          [](const std::string& text, const Tolerance& tol) {
              return scene_from_json(nlohmann::json::parse(text), tol);
          },
          py::arg("text"), py::arg("tol") = Tolerance{});
    m.def("verdict_to_json",
          [](const Verdict& v) { return verdict_to_json(v).dump(2); }, py::arg("v"));
    m.def("load_angle_csv", &load_angle_csv, py::arg("path"));
    m.def("obj_export", &obj_export, py::arg("scene"),
          py::arg("z") = std::optional<Vec>{}, py::arg("segments") = 64,
          py::arg("tol") = Tolerance{});
}
