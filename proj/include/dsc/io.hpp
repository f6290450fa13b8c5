#pragma once

#include <string>

#include <json.hpp>

#include "dsc/converge.hpp"
#include "dsc/curvature.hpp"
#include "dsc/distortion.hpp"
#include "dsc/earth.hpp"
#include "dsc/fractal.hpp"
#include "dsc/graph.hpp"
#include "dsc/manifold.hpp"

namespace dsc {

using Json = nlohmann::ordered_json;

/// {"type": "sphere2" | "sphere3" | "hyperbolic" | "euclidean" | "spheroid", ...}.
/// Hyperbolic disks accept "area" in place of "disk_radius".
Json manifold_to_json(const Manifold& m);
Manifold manifold_from_json(const Json& j);

/// Chart coordinates as an array: 3 (sphere2), 4 (sphere3) or 2 values.
Json point_to_json(const Manifold& m, const Point& p);
Point point_from_json(const Manifold& m, const Json& j);

/// Writes <prefix>.edges and the <prefix>.json sidecar. Throws Io.
void save_geometric_graph(const GeometricGraph& gg, const std::string& prefix);
GeometricGraph load_geometric_graph(const std::string& prefix);

Json to_json(const DistortionReport& r);
Json to_json(const CurvatureReport& r, bool with_samples);
Json to_json(const SweepReport& r);
Json to_json(const FractalStats& s);
Json to_json(const EarthReport& r, bool with_radii);

} // namespace dsc
