// dsc: command-line front end for the discrete sectional curvature library.
// Every subcommand prints one JSON document on stdout; failures print
// {"error": <kind>, "message": <text>} on stderr and exit nonzero.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsc/converge.hpp"
#include "dsc/curvature.hpp"
#include "dsc/distortion.hpp"
#include "dsc/earth.hpp"
#include "dsc/error.hpp"
#include "dsc/fractal.hpp"
#include "dsc/io.hpp"
#include "dsc/sprinkle.hpp"
#include "dsc/wolfram.hpp"

namespace {

using dsc::Json;

struct Common {
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw dsc::Error(dsc::ErrorKind::Io, "cannot write " + path);
    out.precision(17);
    return out;
}

// --manifold takes inline JSON or a path to a JSON file.
dsc::Manifold parse_manifold(const std::string& text) {
    std::string body = text;
    if (!text.empty() && text.front() != '{') {
        std::ifstream in(text);
        if (!in) throw dsc::Error(dsc::ErrorKind::Io, "cannot read manifold file " + text);
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return dsc::manifold_from_json(Json::parse(body));
    } catch (const nlohmann::json::exception& e) {
        throw dsc::Error(dsc::ErrorKind::InvalidArgument, std::string("manifold JSON: ") + e.what());
    }
}

// Effective edge length from the sidecar, or measured with default sources.
double edge_length_of(const dsc::GeometricGraph& gg, std::uint64_t seed, unsigned threads) {
    if (gg.effective_edge_length) return *gg.effective_edge_length;
    dsc::Rng rng(seed);
    const auto sources = dsc::default_distortion_sources(gg.graph.vertex_count(), rng);
    return dsc::measure_distortion(gg, sources, threads).effective_edge_length;
}

struct SprinkleArgs {
    std::string manifold, out;
    std::size_t n = 0;
    double p = dsc::default_tolerance;
    std::optional<double> l;
};

void run_sprinkle(const SprinkleArgs& a, const Common& c) {
    const auto m = parse_manifold(a.manifold);
    dsc::Rng rng(c.seed);
    auto gg = dsc::sprinkle(m, a.n, a.p, rng, a.l, c.threads);
    const auto sources = dsc::default_distortion_sources(a.n, rng);
    const auto dist = dsc::measure_distortion(gg, sources, c.threads);
    gg.effective_edge_length = dist.effective_edge_length;
    dsc::save_geometric_graph(gg, a.out);
    emit(Json{{"schema", "dsc.sprinkle-summary/1"},
              {"manifold", dsc::manifold_to_json(m)},
              {"vertex_count", gg.graph.vertex_count()},
              {"edge_count", gg.graph.edge_count()},
              {"mean_degree", gg.graph.mean_degree()},
              {"connection_length", gg.connection_length},
              {"tolerance", gg.tolerance},
              {"effective_edge_length", dist.effective_edge_length},
              {"distortion", dist.distortion},
              {"edges_file", a.out + ".edges"},
              {"sidecar_file", a.out + ".json"}});
}

struct DistortionArgs {
    std::string graph;
    std::optional<std::size_t> sources;
};

void run_distortion(const DistortionArgs& a, const Common& c) {
    const auto gg = dsc::load_geometric_graph(a.graph);
    dsc::Rng rng(c.seed);
    const std::size_t n = gg.graph.vertex_count();
    const auto sources = a.sources ? dsc::random_sources(n, *a.sources, rng) : dsc::default_distortion_sources(n, rng);
    emit(dsc::to_json(dsc::measure_distortion(gg, sources, c.threads)));
}

struct CurvatureArgs {
    std::string graph;
    std::size_t samples = 1000;
    std::optional<dsc::HopCount> smin, smax;
    std::optional<double> max_length;
    bool per_vertex = false;
    bool with_samples = false;
    std::string csv;
};

void run_curvature(const CurvatureArgs& a, const Common& c) {
    const auto gg = dsc::load_geometric_graph(a.graph);
    const double le = edge_length_of(gg, c.seed, c.threads);
    dsc::Rng rng(c.seed);
    dsc::HopWindow window;
    if (!a.smin || !a.smax) window = dsc::default_hop_window(gg.graph, rng);
    if (a.smin) window.min_hops = *a.smin;
    if (a.smax) window.max_hops = *a.smax;

    if (a.per_vertex) {
        const auto values = dsc::vertex_curvature(gg.graph, le, a.samples, window, c.seed, c.threads);
        Json arr = Json::array();
        std::size_t present = 0;
        for (const auto& v : values) {
            if (v) {
                arr.push_back(*v);
                ++present;
            } else {
                arr.push_back(nullptr);
            }
        }
        if (!a.csv.empty()) {
            auto out = open_csv(a.csv);
            out << "vertex,k\n";
            for (std::size_t i = 0; i < values.size(); ++i)
                if (values[i]) out << i << ',' << *values[i] << '\n';
        }
        emit(Json{{"schema", "dsc.vertex-curvature/1"},
                  {"effective_edge_length", le},
                  {"window", {{"min_hops", window.min_hops}, {"max_hops", window.max_hops}}},
                  {"samples_per_vertex", a.samples},
                  {"present", present},
                  {"values", std::move(arr)}});
        return;
    }

    dsc::CurvatureOptions o;
    o.samples = a.samples;
    o.window = window;
    o.max_length = a.max_length;
    o.seed = c.seed;
    o.threads = c.threads;
    const auto report = dsc::estimate_curvature(gg.graph, le, o);
    if (!a.csv.empty()) {
        auto out = open_csv(a.csv);
        out << "k\n";
        for (double k : report.samples) out << k << '\n';
    }
    auto j = dsc::to_json(report, a.with_samples);
    j["effective_edge_length"] = le;
    j["window"] = {{"min_hops", window.min_hops}, {"max_hops", window.max_hops}};
    emit(j);
}

struct WolframArgs {
    std::string graph;
    std::size_t vertices = 100;
    bool with_samples = false;
};

void run_wolfram(const WolframArgs& a, const Common& c) {
    const auto gg = dsc::load_geometric_graph(a.graph);
    const double le = edge_length_of(gg, c.seed, c.threads);
    dsc::WolframOptions o;
    o.vertices = a.vertices;
    o.seed = c.seed;
    o.threads = c.threads;
    auto j = dsc::to_json(dsc::estimate_wolfram(gg.graph, le, o), a.with_samples);
    j["effective_edge_length"] = le;
    emit(j);
}

struct ConvergeArgs {
    std::string manifold, csv;
    double true_k = 0.0;
    std::vector<std::size_t> counts;
    std::size_t seeds_per = 1;
    std::size_t samples = 1000;
    double p = dsc::default_tolerance;
};

void run_converge(const ConvergeArgs& a, const Common& c) {
    dsc::SweepOptions o;
    o.vertex_counts = a.counts;
    o.seeds_per_count = a.seeds_per;
    o.samples_per_graph = a.samples;
    o.tolerance = a.p;
    o.seed = c.seed;
    o.threads = c.threads;
    const auto report = dsc::run_sweep(parse_manifold(a.manifold), a.true_k, o);
    if (!a.csv.empty()) {
        auto out = open_csv(a.csv);
        out << "vertex_count,distortion,mae,aem\n";
        for (const auto& p : report.points)
            out << p.vertex_count << ',' << p.mean_distortion << ',' << p.mean_absolute_error << ','
                << p.absolute_error_of_mean << '\n';
    }
    auto j = dsc::to_json(report);
    j["true_k"] = a.true_k;
    emit(j);
}

struct FractalArgs {
    int level = 0;
    bool exact = false;
    std::optional<std::size_t> samples;
    double edge_scale = 1.0;
    std::string csv;
};

void run_fractal(const FractalArgs& a, const Common& c) {
    const auto sg = dsc::sierpinski_graph(a.level);
    Json j{{"schema", "dsc.fractal-report/1"},
           {"level", a.level},
           {"mode", a.exact ? "exact" : "sampled"},
           {"vertex_count", sg.graph.vertex_count()},
           {"edge_count", sg.graph.edge_count()},
           {"edge_scale", a.edge_scale}};
    std::optional<dsc::FractalStats> stats;
    std::vector<double> ks;
    if (a.exact) {
        const auto hist = dsc::count_fractal_triangles(sg, c.threads);
        j["degenerate"] = hist.degenerate;
        if (!a.csv.empty()) {
            auto out = open_csv(a.csv);
            out << "a,b,c,k,count\n";
            for (const auto& [key, count] : hist.counts) {
                const auto [ha, hb, hc] = key;
                out << ha << ',' << hb << ',' << hc << ','
                    << dsc::fractal_curvature({ha, hb, hc}, a.edge_scale, a.level) << ',' << count << '\n';
            }
        }
        if (hist.total() > 0) stats = dsc::fractal_curvature_stats(hist, a.edge_scale, a.level);
    } else {
        dsc::FractalSampleOptions o;
        o.samples = *a.samples;
        o.seed = c.seed;
        o.threads = c.threads;
        const auto tris = dsc::sample_fractal_triangles(sg, o);
        std::optional<std::ofstream> out;
        if (!a.csv.empty()) {
            out = open_csv(a.csv);
            *out << "a,b,c,k\n";
        }
        for (const auto& t : tris) {
            try {
                ks.push_back(dsc::fractal_curvature(t, a.edge_scale, a.level));
                if (out) *out << t.a << ',' << t.b << ',' << t.c << ',' << ks.back() << '\n';
            } catch (const dsc::Error& e) {
                if (e.kind() != dsc::ErrorKind::TriangleInequalityViolated && e.kind() != dsc::ErrorKind::RootNotFound)
                    throw;
            }
        }
        stats = dsc::fractal_curvature_stats(tris, a.edge_scale, a.level);
        const auto slope = dsc::tail_slope(ks);
        j["tail_slope"] = slope ? Json(*slope) : Json(nullptr);
    }
    j["empty"] = !stats.has_value();
    j["stats"] = stats ? dsc::to_json(*stats) : Json{{"count", 0}, {"rejected", 0}};
    emit(j);
}

struct EarthArgs {
    double equatorial = 6378.0, polar = 6357.0;
    std::size_t samples = 10000;
    std::optional<double> max_length;
    double leg_min = 500.0, leg_max = 4000.0;
    bool with_radii = false;
    std::string csv;
};

void run_earth(const EarthArgs& a, const Common& c) {
    const dsc::Spheroid s{a.equatorial, a.polar};
    dsc::EarthOptions o;
    o.samples = a.samples;
    o.leg_min = a.leg_min;
    o.leg_max = a.leg_max;
    o.max_length = a.max_length;
    o.seed = c.seed;
    o.threads = c.threads;
    const auto report = dsc::estimate_earth_radius(s, o);
    if (!a.csv.empty()) {
        auto out = open_csv(a.csv);
        out << "radius_km\n";
        for (double r : report.radii) out << r << '\n';
    }
    auto j = dsc::to_json(report, a.with_radii);
    j["spheroid"] = dsc::manifold_to_json(s);
    if (a.max_length) {
        j["max_length"] = *a.max_length;
        j["ks_distance_to_expected_pdf"] = dsc::ks_distance(report.radii, dsc::expected_radius_cdf);
    }
    emit(j);
}

int report_error(const std::string& kind, const std::string& message, int code) {
    std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete sectional curvature experiments"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "Worker cap (0 = available parallelism)");

    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", common.seed, "Master seed")->capture_default_str(); };

    SprinkleArgs sp;
    auto* sprinkle = app.add_subcommand("sprinkle", "Sprinkle a hard-annulus random geometric graph");
    sprinkle->add_option("--manifold", sp.manifold, "Manifold JSON or path to a JSON file")->required();
    sprinkle->add_option("--n", sp.n, "Vertex count")->required()->check(CLI::PositiveNumber);
    sprinkle->add_option("--p", sp.p, "Annulus tolerance")->capture_default_str();
    sprinkle->add_option("--l", sp.l, "Connection length (default: smallest connecting one)");
    sprinkle->add_option("--out", sp.out, "Output prefix for <prefix>.edges and <prefix>.json")->required();
    add_seed(sprinkle);

    DistortionArgs di;
    auto* distortion = app.add_subcommand("distortion", "Effective edge length and metric distortion");
    distortion->add_option("--graph", di.graph, "Graph prefix")->required();
    distortion->add_option("--sources", di.sources, "Number of random BFS sources");
    add_seed(distortion);

    CurvatureArgs cu;
    auto* curvature = app.add_subcommand("curvature", "Sectional curvature from sampled graph triangles");
    curvature->add_option("--graph", cu.graph, "Graph prefix")->required();
    curvature->add_option("--samples", cu.samples, "Triangles (per vertex with --per-vertex)")->capture_default_str();
    curvature->add_option("--smin", cu.smin, "Minimum side in hops");
    curvature->add_option("--smax", cu.smax, "Maximum side in hops");
    curvature->add_option("--max-length", cu.max_length, "Reject triangles with a longer side");
    curvature->add_flag("--per-vertex", cu.per_vertex, "Mean K with each vertex as apex");
    curvature->add_flag("--with-samples", cu.with_samples, "Include accepted K values in the JSON");
    curvature->add_option("--csv", cu.csv, "Write K values to this CSV file");
    add_seed(curvature);

    WolframArgs wo;
    auto* wolfram = app.add_subcommand("wolfram", "Curvature from geodesic ball growth");
    wolfram->add_option("--graph", wo.graph, "Graph prefix")->required();
    wolfram->add_option("--vertices", wo.vertices, "Sampled centre vertices")->capture_default_str();
    wolfram->add_flag("--with-samples", wo.with_samples, "Include per-vertex K values in the JSON");
    add_seed(wolfram);

    ConvergeArgs co;
    auto* converge = app.add_subcommand("converge", "Error against distortion over a vertex-count sweep");
    converge->add_option("--manifold", co.manifold, "Manifold JSON or path to a JSON file")->required();
    converge->add_option("--true-k", co.true_k, "Known sectional curvature")->required();
    converge->add_option("--counts", co.counts, "Vertex counts")->required()->delimiter(',');
    converge->add_option("--seeds-per", co.seeds_per, "Graphs per count")->capture_default_str();
    converge->add_option("--samples", co.samples, "Triangles per graph")->capture_default_str();
    converge->add_option("--p", co.p, "Annulus tolerance")->capture_default_str();
    converge->add_option("--csv", co.csv, "Write (distortion, mae, aem) rows to this CSV file");
    add_seed(converge);

    FractalArgs fr;
    auto* fractal = app.add_subcommand("fractal", "Curvature distribution on Sierpinski graphs");
    fractal->add_option("--level", fr.level, "Sierpinski level")->required()->check(CLI::NonNegativeNumber);
    auto* exact = fractal->add_flag("--exact", fr.exact, "Enumerate every triangle");
    auto* samples = fractal->add_option("--samples", fr.samples, "Draw this many triangles");
    exact->excludes(samples);
    fractal->add_option("--edge-scale", fr.edge_scale, "Edge length ratio per level")->capture_default_str();
    fractal->add_option("--csv", fr.csv, "Write triangles and K to this CSV file");
    add_seed(fractal);

    EarthArgs ea;
    auto* earth = app.add_subcommand("earth", "Earth radius from right triangles on an oblate spheroid");
    earth->add_option("--equatorial", ea.equatorial, "Equatorial radius (km)")->capture_default_str();
    earth->add_option("--polar", ea.polar, "Polar radius (km)")->capture_default_str();
    earth->add_option("--samples", ea.samples, "Triangles")->capture_default_str();
    earth->add_option("--max-length", ea.max_length, "Reject triangles with a longer side (km)");
    earth->add_option("--leg-min", ea.leg_min, "Shortest leg (km)")->capture_default_str();
    earth->add_option("--leg-max", ea.leg_max, "Longest leg (km)")->capture_default_str();
    earth->add_flag("--with-radii", ea.with_radii, "Include radii in the JSON");
    earth->add_option("--csv", ea.csv, "Write radii to this CSV file");
    add_seed(earth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("InvalidArgument", e.what(), 2);
    }

    try {
        if (*sprinkle) run_sprinkle(sp, common);
        if (*distortion) run_distortion(di, common);
        if (*curvature) run_curvature(cu, common);
        if (*wolfram) run_wolfram(wo, common);
        if (*converge) run_converge(co, common);
        if (*fractal) {
            if (!fr.exact && !fr.samples) return report_error("InvalidArgument", "fractal needs --exact or --samples", 2);
            run_fractal(fr, common);
        }
        if (*earth) run_earth(ea, common);
    } catch (const dsc::Error& e) {
        return report_error(std::string(dsc::error_kind_name(e.kind())), e.what(), 1);
    } catch (const std::exception& e) {
        return report_error("InternalError", e.what(), 1);
    }
    return 0;
}
