#include "sightcone/io.hpp"
#include "sightcone/rng.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

using namespace sightcone;

namespace {

Vec parse_point(const std::string& s) {
    std::vector<double> vals;
    std::istringstream in(s);
    std::string cell;
    while (std::getline(in, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 2) throw DegenerateInput("point needs at least 2 coordinates");
    Vec z(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) z[static_cast<int>(i)] = vals[i];
    return z;
}

Tolerance make_tol(double residual_override) {
    Tolerance tol;
    if (residual_override > 0.0) tol.residual_max = residual_override;
    return tol;
}

VerifyMode parse_mode(const std::string& mode) {
    return mode == "projections" ? VerifyMode::Projections : VerifyMode::Cones;
}

int verdict_exit(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::Equal: return 0;
    case VerdictKind::Distinct: return 2;
    case VerdictKind::Inconclusive: return 3;
    }
    return 1;
}

const Polytope& body(const Scene& scene, size_t i) {
    if (scene.polytopes.size() <= i)
        throw DegenerateInput("scene has too few polytopes");
    return scene.polytopes[i];
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sight cones and spherical shadows of convex bodies"};
    app.require_subcommand(1);

    std::string scene_path, out, zspec, mode = "cones", csv_path;
    std::uint64_t seed = 0;
    int samples = 500, body_index = 0, n_bodies = 2, n_points = 8, segments = 64;
    double tol_override = -1.0, radius = 1.0;

    auto* gen = app.add_subcommand("gen", "write a random scene");
    gen->add_option("--seed", seed)->required();
    gen->add_option("--bodies", n_bodies)->check(CLI::PositiveNumber);
    gen->add_option("--points", n_points)->check(CLI::Range(4, 64));
    gen->add_option("--r", radius)->check(CLI::PositiveNumber);
    gen->add_option("--out", out);

    auto* cone = app.add_subcommand("cone", "support cone of one body at z");
    cone->add_option("--scene", scene_path)->required();
    cone->add_option("--z", zspec)->required();
    cone->add_option("--body", body_index);
    cone->add_option("--tol", tol_override);
    cone->add_option("--out", out);

    auto* project = app.add_subcommand("project", "spherical shadow of one body at z");
    project->add_option("--scene", scene_path)->required();
    project->add_option("--z", zspec)->required();
    project->add_option("--body", body_index);
    project->add_option("--tol", tol_override);
    project->add_option("--out", out);

    auto* congruent =
        app.add_subcommand("congruent", "compare the first two bodies at one z");
    congruent->add_option("--scene", scene_path)->required();
    congruent->add_option("--z", zspec)->required();
    congruent->add_option("--mode", mode)->check(CLI::IsMember({"cones", "projections"}));
    congruent->add_option("--tol", tol_override);
    congruent->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "verdict for the first two bodies");
    verify->add_option("--scene", scene_path)->required();
    verify->add_option("--mode", mode)->check(CLI::IsMember({"cones", "projections"}));
    verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed)->required();
    verify->add_option("--tol", tol_override);
    verify->add_option("--out", out);

    auto* balls = app.add_subcommand("balls", "verdict for the first two balls");
    balls->add_option("--scene", scene_path)->required();
    balls->add_option("--tol", tol_override);
    balls->add_option("--out", out);

    auto* recover = app.add_subcommand("recover", "segment endpoints from angle CSV");
    recover->add_option("--csv", csv_path)->required();
    recover->add_option("--seed", seed)->required();
    recover->add_option("--r", radius)->check(CLI::PositiveNumber);
    recover->add_option("--tol", tol_override);
    recover->add_option("--out", out);

    auto* counterex =
        app.add_subcommand("counterexample", "congruent circles with incongruent cones");
    counterex->add_option("--out", out);

    auto* exportobj = app.add_subcommand("export-obj", "wireframes for external viewers");
    exportobj->add_option("--scene", scene_path)->required();
    exportobj->add_option("--z", zspec);
    exportobj->add_option("--segments", segments)->check(CLI::Range(2, 4096));
    exportobj->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const Tolerance tol = make_tol(tol_override);

        if (gen->parsed()) {
            Scene scene;
            scene.r = radius;
            for (int k = 0; k < n_bodies; ++k) {
                auto rng = make_rng(seed, 1000 + static_cast<std::uint64_t>(k));
                std::vector<Vec> pts;
                for (int i = 0; i < n_points; ++i)
                    pts.push_back(random_in_ball(rng, 3, 0.4 * radius));
                scene.polytopes.push_back(convex_hull(pts, 3, tol));
            }
            write_output(out, scene_to_json(scene).dump(2) + "\n");
            return 0;
        }
        if (cone->parsed()) {
            Scene scene = load_scene(scene_path, tol);
            SupportCone c = support_cone(parse_point(zspec),
                                         body(scene, body_index), tol);
            write_output(out, cone_to_json(c).dump(2) + "\n");
            return 0;
        }
        if (project->parsed()) {
            Scene scene = load_scene(scene_path, tol);
            SphericalPolytope sp = spherical_projection(
                parse_point(zspec), body(scene, body_index), scene.r, tol);
            write_output(out, projection_to_json(sp).dump(2) + "\n");
            return 0;
        }
        if (congruent->parsed()) {
            Scene scene = load_scene(scene_path, tol);
            Vec z = parse_point(zspec);
            std::optional<CongruenceWitness> w;
            if (parse_mode(mode) == VerifyMode::Cones)
                w = cone_congruent(support_cone(z, body(scene, 0), tol),
                                   support_cone(z, body(scene, 1), tol), tol);
            else
                w = spherical_congruent(
                    spherical_projection(z, body(scene, 0), scene.r, tol),
                    spherical_projection(z, body(scene, 1), scene.r, tol), tol);
            nlohmann::json j;
            j["congruent"] = w.has_value();
            j["witness"] = w ? witness_to_json(*w) : nlohmann::json(nullptr);
            write_output(out, j.dump(2) + "\n");
            return w ? 0 : 2;
        }
        if (verify->parsed()) {
            Scene scene = load_scene(scene_path, tol);
            Verdict v = verify_pair(body(scene, 0), body(scene, 1), scene.r,
                                    parse_mode(mode), samples, seed, tol);
            write_output(out, verdict_to_json(v).dump(2) + "\n");
            return verdict_exit(v.kind);
        }
        if (balls->parsed()) {
            Scene scene = load_scene(scene_path, tol);
            if (scene.balls.size() < 2)
                throw DegenerateInput("scene has too few balls");
            Verdict v = verify_balls(scene.balls[0], scene.balls[1], scene.r, tol);
            write_output(out, verdict_to_json(v).dump(2) + "\n");
            return verdict_exit(v.kind);
        }
        if (recover->parsed()) {
            auto samples_in = load_angle_csv(csv_path);
            auto [x, y] = recover_segment(samples_in, radius, seed, tol);
            double rms = std::sqrt(recover_objective(samples_in, x, y) /
                                   static_cast<double>(samples_in.size()));
            nlohmann::json j;
            j["x"] = {x[0], x[1]};
            j["y"] = {y[0], y[1]};
            j["rms"] = rms;
            write_output(out, j.dump(2) + "\n");
            return 0;
        }
        if (counterex->parsed()) {
            write_output(out, counterexample_to_json(counterexample_report(tol)).dump(2) + "\n");
            return 0;
        }
        if (exportobj->parsed()) {
            Scene scene = load_scene(scene_path, tol);
            std::optional<Vec> z;
            if (!zspec.empty()) z = parse_point(zspec);
            write_output(out, obj_export(scene, z, segments, tol));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
