#include "dsc/io.hpp"

#include <fstream>
#include <sstream>

#include "dsc/error.hpp"

namespace dsc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double number(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw Error(ErrorKind::InvalidArgument, std::string("manifold field '") + key + "' missing or not a number");
    return j.at(key).get<double>();
}

Json stats_json(const SummaryStats& s) {
    return Json{{"count", s.count},
                {"mean", s.mean},
                {"std_dev", s.std_dev},
                {"standard_error", s.standard_error},
                {"trimmed_mean", s.trimmed_mean},
                {"median", s.median}};
}

Json fit_json(const std::optional<LinearFit>& f) {
    if (!f) return nullptr;
    return Json{{"slope", f->slope}, {"intercept", f->intercept}, {"r_squared", f->r_squared},
                {"degenerate", f->degenerate}};
}

} // namespace

Json manifold_to_json(const Manifold& m) {
    return std::visit(
        overloaded{
            [](const Sphere2& s) { return Json{{"type", "sphere2"}, {"radius", s.radius}}; },
            [](const Sphere3& s) { return Json{{"type", "sphere3"}, {"radius", s.radius}}; },
            [](const HyperbolicDisk& h) {
                return Json{{"type", "hyperbolic"}, {"curvature_scale", h.curvature_scale},
                            {"disk_radius", h.disk_radius}};
            },
            [](const EuclideanDisk& e) { return Json{{"type", "euclidean"}, {"radius", e.radius}}; },
            [](const Spheroid& s) {
                return Json{{"type", "spheroid"}, {"equatorial_radius", s.equatorial_radius},
                            {"polar_radius", s.polar_radius}};
            },
        },
        m);
}

Manifold manifold_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw Error(ErrorKind::InvalidArgument, "manifold must be an object with a string 'type'");
    const auto type = j.at("type").get<std::string>();
    Manifold m;
    if (type == "sphere2") {
        m = Sphere2{number(j, "radius")};
    } else if (type == "sphere3") {
        m = Sphere3{number(j, "radius")};
    } else if (type == "hyperbolic") {
        const double k = j.contains("curvature_scale") ? number(j, "curvature_scale") : 1.0;
        const double r = j.contains("area") ? hyperbolic_disk_radius_for_area(number(j, "area"), k)
                                            : number(j, "disk_radius");
        m = HyperbolicDisk{k, r};
    } else if (type == "euclidean") {
        m = EuclideanDisk{number(j, "radius")};
    } else if (type == "spheroid") {
        Spheroid s;
        if (j.contains("equatorial_radius")) s.equatorial_radius = number(j, "equatorial_radius");
        if (j.contains("polar_radius")) s.polar_radius = number(j, "polar_radius");
        m = s;
    } else {
        throw Error(ErrorKind::UnsupportedManifold, "unknown manifold type '" + type + "'");
    }
    validate(m);
    return m;
}

Json point_to_json(const Manifold& m, const Point& p) {
    const std::size_t dims = std::holds_alternative<Sphere2>(m)   ? 3
                             : std::holds_alternative<Sphere3>(m) ? 4
                                                                  : 2;
    Json out = Json::array();
    for (std::size_t i = 0; i < dims; ++i) out.push_back(p.c[i]);
    return out;
}

Point point_from_json(const Manifold& m, const Json& j) {
    const std::size_t dims = point_to_json(m, Point{}).size();
    if (!j.is_array() || j.size() != dims)
        throw Error(ErrorKind::InvalidArgument, "coordinate must be an array of " + std::to_string(dims) + " numbers");
    Point p;
    for (std::size_t i = 0; i < dims; ++i) p.c[i] = j.at(i).get<double>();
    return p;
}

void save_geometric_graph(const GeometricGraph& gg, const std::string& prefix) {
    std::ofstream edges(prefix + ".edges");
    if (!edges) throw Error(ErrorKind::Io, "cannot write " + prefix + ".edges");
    write_edge_list(edges, gg.graph);

    Json side{{"schema", "dsc.graph/1"},
              {"manifold", manifold_to_json(gg.manifold)},
              {"vertex_count", gg.graph.vertex_count()},
              {"connection_length", gg.connection_length},
              {"tolerance", gg.tolerance}};
    if (gg.effective_edge_length) side["effective_edge_length"] = *gg.effective_edge_length;
    Json coords = Json::array();
    for (const auto& p : gg.coordinates) coords.push_back(point_to_json(gg.manifold, p));
    side["coordinates"] = std::move(coords);
    std::ofstream meta(prefix + ".json");
    if (!meta) throw Error(ErrorKind::Io, "cannot write " + prefix + ".json");
    meta << side.dump(1) << '\n';
    if (!edges || !meta) throw Error(ErrorKind::Io, "write failed for " + prefix);
}

GeometricGraph load_geometric_graph(const std::string& prefix) {
    std::ifstream edges(prefix + ".edges");
    if (!edges) throw Error(ErrorKind::Io, "cannot read " + prefix + ".edges");
    std::ifstream meta(prefix + ".json");
    if (!meta) throw Error(ErrorKind::Io, "cannot read " + prefix + ".json");

    GeometricGraph gg;
    gg.graph = read_edge_list(edges);
    Json side;
    try {
        side = Json::parse(meta);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Io, prefix + ".json: " + e.what());
    }
    try {
        gg.manifold = manifold_from_json(side.at("manifold"));
        gg.connection_length = side.at("connection_length").get<double>();
        gg.tolerance = side.at("tolerance").get<double>();
        if (side.contains("effective_edge_length"))
            gg.effective_edge_length = side.at("effective_edge_length").get<double>();
        for (const auto& c : side.at("coordinates")) gg.coordinates.push_back(point_from_json(gg.manifold, c));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Io, prefix + ".json: " + e.what());
    }
    if (gg.coordinates.size() != gg.graph.vertex_count())
        throw Error(ErrorKind::Io, prefix + ": coordinate count does not match the edge list");
    return gg;
}

Json to_json(const DistortionReport& r) {
    return Json{{"schema", "dsc.distortion-report/1"},
                {"pair_count", r.pair_count},
                {"effective_edge_length", r.effective_edge_length},
                {"distortion", r.distortion},
                {"source_count", r.sources.size()},
                {"sources", r.sources}};
}

Json to_json(const CurvatureReport& r, bool with_samples) {
    Json j{{"schema", "dsc.curvature-report/1"},
           {"estimator", r.estimator},
           {"requested", r.requested},
           {"stats", stats_json(r.stats)},
           {"rejected", r.rejected},
           {"multiple_root_count", r.multiple_root_count}};
    if (with_samples) j["samples"] = r.samples;
    return j;
}

Json to_json(const SweepReport& r) {
    Json jobs = Json::array();
    for (const auto& job : r.jobs) {
        Json j{{"vertex_count", job.vertex_count}, {"seed_index", job.seed_index}};
        if (job.failure) {
            j["failure"] = *job.failure;
        } else {
            j["distortion"] = job.distortion;
            j["effective_edge_length"] = job.effective_edge_length;
            j["sample_count"] = job.curvatures.size();
        }
        jobs.push_back(std::move(j));
    }
    Json points = Json::array();
    for (const auto& p : r.points)
        points.push_back(Json{{"vertex_count", p.vertex_count},
                              {"mean_distortion", p.mean_distortion},
                              {"mean_absolute_error", p.mean_absolute_error},
                              {"absolute_error_of_mean", p.absolute_error_of_mean},
                              {"mean_absolute_error_scaled", p.mean_absolute_error * p.mean_edge_length_sq},
                              {"absolute_error_of_mean_scaled", p.absolute_error_of_mean * p.mean_edge_length_sq},
                              {"seeds_used", p.seeds_used},
                              {"sample_count", p.sample_count}});
    return Json{{"schema", "dsc.sweep-report/1"},
                {"jobs", std::move(jobs)},
                {"points", std::move(points)},
                {"mean_absolute_error_fit", fit_json(r.mae_fit)},
                {"absolute_error_of_mean_fit", fit_json(r.aem_fit)}};
}

Json to_json(const FractalStats& s) {
    return Json{{"count", s.count}, {"mean", s.mean}, {"median", s.median}, {"std_dev", s.std_dev},
                {"rejected", s.rejected}};
}

Json to_json(const EarthReport& r, bool with_radii) {
    Json j{{"schema", "dsc.earth-report/1"},
           {"requested", r.requested},
           {"n", r.radii.size()},
           {"mean", r.stats.mean},
           {"standard_error", r.stats.standard_error},
           {"median", r.stats.median},
           {"rejected_negative_k", r.rejected.contains(rejection::negative_curvature)
                                       ? r.rejected.at(rejection::negative_curvature)
                                       : 0},
           {"rejected", r.rejected}};
    if (with_radii) j["radii"] = r.radii;
    return j;
}

} // namespace dsc
