"""Sight cones, spherical projections, and congruence checks for convex
bodies inside a sphere."""

from sightcone._core import (
    AngleSample,
    Arc,
    Ball,
    ConeShape,
    ConeShapeKind,
    CongruenceWitness,
    CounterexampleReport,
    Error,
    Facet,
    Hyperplane,
    InsidePolytope,
    OrthoMap,
    Polytope,
    RegionBoundary,
    RegionReport,
    RegionSummary,
    Scene,
    SphericalCap,
    SphericalPolytope,
    SupportCone,
    Tolerance,
    Verdict,
    VerdictKind,
    VerifyMode,
    angle,
    arc_circle,
    arc_polyline,
    ball_cap,
    cone_congruent,
    cone_shape_classify,
    convex_hull,
    counterexample_report,
    load_angle_csv,
    load_scene,
    obj_export,
    random_polytope,
    recover_segment,
    same_vertex_set,
    sample_regions,
    scene_from_json,
    scene_to_json,
    shadow_boundary,
    spanning_directions_extremal,
    sphere_samples,
    spherical_congruent,
    spherical_projection,
    support_cone,
    transformed,
    translated,
    verdict_to_json,
    verify_balls,
    verify_pair,
)

__version__ = "0.1.0"
