#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sightcone/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace sightcone;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("SIGHTCONE_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SIGHTCONE_CLI must point at the built binary");
    return p;
}

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Vec v3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

Polytope cube(double h, const Vec& shift) {
    std::vector<Vec> pts;
    for (int s = 0; s < 8; ++s)
        pts.push_back(shift + v3(s & 1 ? h : -h, s & 2 ? h : -h, s & 4 ? h : -h));
    return convex_hull(pts, 3);
}

std::string write_scene(const std::string& name, const Scene& scene) {
    std::string path = "/tmp/sightcone_cli_" + name + ".json";
    write_output(path, scene_to_json(scene).dump());
    return path;
}

std::string equal_scene() {
    Scene s;
    s.r = 1.0;
    s.polytopes = {cube(0.25, v3(0, 0, 0)), cube(0.25, v3(0, 0, 0))};
    return write_scene("equal", s);
}

std::string shifted_scene() {
    Scene s;
    s.r = 1.0;
    s.polytopes = {cube(0.25, v3(0, 0, 0)), cube(0.25, v3(0.05, -0.02, 0.03))};
    return write_scene("shifted", s);
}

} // namespace

TEST_CASE("verify: equal bodies exit 0 with verdict equal") {
    for (std::string mode : {"cones", "projections"}) {
        RunResult r = run("verify --scene " + equal_scene() + " --mode " + mode +
                          " --seed 1");
        CHECK(r.exit_code == 0);
        json j = json::parse(r.out);
        CHECK(j["verdict"] == "equal");
        CHECK(j["witness"].is_null());
        CHECK(j["max_residual"].get<double>() <= 1e-9);
    }
}

TEST_CASE("verify: shifted copy exits 2 with a witness") {
    RunResult r = run("verify --scene " + shifted_scene() +
                      " --mode projections --seed 1");
    CHECK(r.exit_code == 2);
    json j = json::parse(r.out);
    CHECK(j["verdict"] == "distinct");
    REQUIRE(j["witness"].is_array());
    CHECK(j["witness"].size() == 3);
}

TEST_CASE("gen is deterministic per seed and its output reloads identically") {
    RunResult a = run("gen --seed 42");
    RunResult b = run("gen --seed 42");
    RunResult c = run("gen --seed 43");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);

    std::string path = "/tmp/sightcone_cli_gen.json";
    REQUIRE(run("gen --seed 42 --out " + path).exit_code == 0);
    Scene first = load_scene(path);
    Scene second = scene_from_json(scene_to_json(first));
    REQUIRE(first.polytopes.size() == second.polytopes.size());
    for (size_t i = 0; i < first.polytopes.size(); ++i)
        CHECK(same_vertex_set(first.polytopes[i], second.polytopes[i], 1e-12));
}

TEST_CASE("cone and project answer single queries") {
    RunResult rc = run("cone --scene " + equal_scene() + " --z 0,0,1");
    CHECK(rc.exit_code == 0);
    json jc = json::parse(rc.out);
    CHECK(jc["directions"].size() == 4);

    RunResult rp = run("project --scene " + equal_scene() + " --z 0,0,1 --body 1");
    CHECK(rp.exit_code == 0);
    json jp = json::parse(rp.out);
    CHECK(jp["vertices"].size() == 4);
    CHECK(jp["arcs"].size() == 4);
}

TEST_CASE("congruent compares the two bodies at one viewpoint") {
    // 0.6^2 + 0.48^2 + 0.64^2 = 1, so the point works for projections too
    CHECK(run("congruent --scene " + equal_scene() + " --z 0.6,0.48,0.64")
              .exit_code == 0);
    CHECK(run("congruent --scene " + shifted_scene() +
              " --z 0.6,0.48,0.64 --mode projections")
              .exit_code == 2);
}

TEST_CASE("balls subcommand applies the two-pole procedure") {
    Scene eq;
    eq.r = 1.0;
    eq.balls = {Ball{v3(0.1, 0, 0.2), 0.3}, Ball{v3(0.1, 0, 0.2), 0.3}};
    Scene ne = eq;
    ne.balls[1].radius = 0.31;
    CHECK(run("balls --scene " + write_scene("balls_eq", eq)).exit_code == 0);
    RunResult r = run("balls --scene " + write_scene("balls_ne", ne));
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.out)["witness"].is_array());
}

TEST_CASE("recover reads the angle csv and reports both endpoints") {
    std::string csv = "/tmp/sightcone_cli_angles.csv";
    {
        std::ofstream f(csv);
        f << "zx,zy,alpha\n";
        Vec x = v3(0.2, 0.0, 0).head(2), y = v3(-0.3, 0.1, 0).head(2);
        for (int k = 0; k < 60; ++k) {
            double t = 2.0 * std::acos(-1.0) * k / 60 + 0.013;
            Vec z(2);
            z << std::cos(t), std::sin(t);
            Vec a = x - z, b = y - z;
            double alpha = std::acos(a.dot(b) / (a.norm() * b.norm()));
            f << z[0] << ',' << z[1] << ',' << alpha << '\n';
        }
    }
    RunResult r = run("recover --csv " + csv + " --seed 0");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["x"][0].get<double>() == doctest::Approx(-0.3).epsilon(1e-6));
    CHECK(j["y"][0].get<double>() == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(j["rms"].get<double>() <= 1e-6);
}

TEST_CASE("counterexample prints the fixture report") {
    RunResult r = run("counterexample");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["radius_s2"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["c2"]["axis_ratio"].get<double>() ==
          doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-9));
    CHECK(j["cones_congruent"] == false);
}

TEST_CASE("export-obj writes a wireframe file") {
    std::string path = "/tmp/sightcone_cli_wire.obj";
    RunResult r =
        run("export-obj --scene " + equal_scene() + " --z 0,0,1 --out " + path);
    CHECK(r.exit_code == 0);
    std::string obj = read_text_file(path);
    CHECK(obj.find("o projection_0") != std::string::npos);
    CHECK(obj.find("l ") != std::string::npos);
}

TEST_CASE("error paths exit 1") {
    CHECK(run("nonsense").exit_code == 1);
    CHECK(run("verify --scene /tmp/does_not_exist.json --seed 1").exit_code == 1);
    CHECK(run("verify --scene " + equal_scene() + " --seed 1 --bogus 3")
              .exit_code == 1);
    CHECK(run("verify --scene " + equal_scene() + "").exit_code == 1);
    CHECK(run("cone --scene " + equal_scene() + " --z 0,0").exit_code == 1);
    CHECK(run("--help").exit_code == 0);
}
