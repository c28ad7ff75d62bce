#ifndef SIGHTCONE_IO_HPP
#define SIGHTCONE_IO_HPP

#include "sightcone/verifier.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sightcone {

/// Scene files: {"r": <real>, "polytopes": [{"vertices": [[...], ...]}, ...],
/// "balls": [{"center": [...], "radius": <real>}, ...]}. Vertex order in the
/// file is not trusted; the hull is recomputed on load.
Scene scene_from_json(const nlohmann::json& j, const Tolerance& tol = {});
nlohmann::json scene_to_json(const Scene& scene);
Scene load_scene(const std::string& path, const Tolerance& tol = {});

nlohmann::json cone_to_json(const SupportCone& cone);
nlohmann::json projection_to_json(const SphericalPolytope& sp);
nlohmann::json witness_to_json(const CongruenceWitness& w);
nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json counterexample_to_json(const CounterexampleReport& rep);

/// Angle samples as CSV with header "zx,zy,alpha", angles in radians.
std::vector<AngleSample> angle_samples_from_csv(const std::string& text);
std::vector<AngleSample> load_angle_csv(const std::string& path);

/// Wireframe export: polytope edges, and when a source point is given also
/// the spanning edges of each cone, the boundary arcs of each projection
/// (as polylines with `segments` chords), and the rim of each ball's cap.
std::string obj_export(const Scene& scene, const std::optional<Vec>& z,
                       int segments = 64, const Tolerance& tol = {});

std::string read_text_file(const std::string& path);

/// Empty path or "-" writes to stdout.
void write_output(const std::string& path, const std::string& text);

} // namespace sightcone

#endif
