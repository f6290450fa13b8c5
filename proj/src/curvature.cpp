#include "dsc/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "dsc/error.hpp"
#include "dsc/parallel.hpp"

namespace dsc {

namespace {

struct SampleWorkspace {
    BfsWorkspace from_apex;
    BfsWorkspace from_v;
    BfsWorkspace from_w;
    std::vector<VertexId> candidates;
    std::optional<VertexId> cached_apex;
};

// Both legs of the right triangle must reach the minimum scale, so the base
// spans at least twice that.
HopCount min_base_hops(const HopWindow& window) {
    return 2 * window.min_hops;
}

std::optional<TriangleSample> try_sample(const Graph& g, double edge_length, const HopWindow& window,
                                         Rng& rng, std::optional<VertexId> apex, SampleWorkspace& ws) {
    const auto n = static_cast<VertexId>(g.vertex_count());
    const VertexId u = apex ? *apex : static_cast<VertexId>(rng.index(n));
    if (!ws.cached_apex || *ws.cached_apex != u) {
        bfs_hops(g, u, ws.from_apex);
        ws.cached_apex = u;
    }
    const auto& hu = ws.from_apex.hops;

    ws.candidates.clear();
    for (VertexId x = 0; x < n; ++x)
        if (hu[x] != unreachable && hu[x] >= window.min_hops && hu[x] <= window.max_hops)
            ws.candidates.push_back(x);
    if (ws.candidates.empty()) return std::nullopt;
    const VertexId v = ws.candidates[rng.index(ws.candidates.size())];
    const HopCount side = hu[v];

    bfs_hops(g, v, ws.from_v);
    const auto& hv = ws.from_v.hops;
    const HopCount min_base = min_base_hops(window);
    ws.candidates.clear();
    for (VertexId x = 0; x < n; ++x)
        if (x != v && hu[x] == side && hv[x] != unreachable && hv[x] % 2 == 0 && hv[x] >= min_base)
            ws.candidates.push_back(x);
    if (ws.candidates.empty()) return std::nullopt;
    const VertexId w = ws.candidates[rng.index(ws.candidates.size())];
    const HopCount half = hv[w] / 2;

    bfs_hops(g, w, ws.from_w);
    const auto& hw = ws.from_w.hops;
    // Any vertex halfway along a shortest v-w path will do; pick one uniformly.
    ws.candidates.clear();
    for (VertexId x = 0; x < n; ++x)
        if (hv[x] == half && hw[x] == half) ws.candidates.push_back(x);
    if (ws.candidates.empty()) return std::nullopt;
    const VertexId m = ws.candidates[rng.index(ws.candidates.size())];
    if (hu[m] < window.min_hops) return std::nullopt;

    TriangleSample sample;
    sample.a = static_cast<double>(hu[m]) * edge_length;
    sample.b = static_cast<double>(half) * edge_length;
    sample.c = static_cast<double>(side) * edge_length;
    sample.provenance = TriangleProvenance{u, v, w, m, hu[m], half, side};
    return sample;
}

void check_window(const HopWindow& window) {
    if (window.min_hops < 2 || window.min_hops > window.max_hops)
        throw Error(ErrorKind::InvalidArgument, "hop window must satisfy 2 <= min <= max");
}

} // namespace

HopWindow default_hop_window(const Graph& g, Rng& rng) {
    const HopCount diameter = diameter_estimate(g, rng);
    HopWindow window;
    window.min_hops = std::max<HopCount>(2, (diameter + 2) / 3);
    window.max_hops = std::max(window.min_hops, diameter);
    return window;
}

TriangleSample sample_triangle(const Graph& g, double edge_length, HopWindow window, Rng& rng,
                               std::optional<VertexId> apex, int max_attempts) {
    check_window(window);
    if (g.vertex_count() == 0) throw Error(ErrorKind::InvalidArgument, "empty graph");
    SampleWorkspace ws;
    for (int attempt = 0; attempt < max_attempts; ++attempt)
        if (auto s = try_sample(g, edge_length, window, rng, apex, ws)) return *s;
    throw Error(ErrorKind::NoCandidate, "no valid triangle found");
}

CurvatureReport make_report(std::vector<double> samples, std::map<std::string, std::size_t> rejected,
                            std::size_t requested, std::string estimator) {
    const std::size_t needed = std::max<std::size_t>(10, requested / 100);
    if (samples.size() < needed)
        throw Error(ErrorKind::TooFewAccepted, "only " + std::to_string(samples.size()) + " of " +
                                                   std::to_string(requested) + " samples accepted");
    CurvatureReport report;
    report.estimator = std::move(estimator);
    report.stats = summarize(samples);
    report.samples = std::move(samples);
    report.rejected = std::move(rejected);
    report.requested = requested;
    return report;
}

CurvatureReport estimate_curvature(const Graph& g, double edge_length, const CurvatureOptions& options) {
    check_window(options.window);
    if (options.samples == 0) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
    if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");

    struct Outcome {
        double curvature = 0.0;
        const char* rejected = nullptr;
        bool multiple_roots = false;
    };
    std::vector<Outcome> outcomes(options.samples);
    parallel_for(options.samples, options.threads, [&](std::size_t i) {
        Rng rng = Rng::stream(options.seed, i);
        auto& out = outcomes[i];
        TriangleSample t;
        try {
            t = sample_triangle(g, edge_length, options.window, rng);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoCandidate) throw;
            out.rejected = rejection::no_candidate;
            return;
        }
        if (options.max_length && std::max({t.a, t.b, t.c}) > *options.max_length) {
            out.rejected = rejection::exceeds_max_length;
            return;
        }
        try {
            const auto root = solve_curvature(t.a, t.b, t.c);
            out.curvature = root.curvature;
            out.multiple_roots = root.sign_changes > 1;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TriangleInequalityViolated)
                out.rejected = rejection::triangle_inequality;
            else if (e.kind() == ErrorKind::RootNotFound)
                out.rejected = rejection::root_not_found;
            else
                throw;
        }
    });

    std::vector<double> accepted;
    std::map<std::string, std::size_t> rejected;
    std::size_t multiple = 0;
    for (const auto& o : outcomes) {
        if (o.rejected) {
            ++rejected[o.rejected];
            continue;
        }
        accepted.push_back(o.curvature);
        multiple += o.multiple_roots ? 1 : 0;
    }
    auto report = make_report(std::move(accepted), std::move(rejected), options.samples);
    report.multiple_root_count = multiple;
    return report;
}

std::vector<std::optional<double>> vertex_curvature(const Graph& g, double edge_length,
                                                    std::size_t samples_per_vertex, HopWindow window,
                                                    std::uint64_t seed, unsigned threads) {
    check_window(window);
    const std::size_t n = g.vertex_count();
    if (n == 0 || !is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
    std::vector<std::optional<double>> result(n);
    parallel_for(n, threads, [&](std::size_t v) {
        Rng rng = Rng::stream(seed, v);
        SampleWorkspace ws;
        double sum = 0.0;
        std::size_t accepted = 0;
        for (std::size_t k = 0; k < samples_per_vertex; ++k) {
            std::optional<TriangleSample> t;
            for (int attempt = 0; attempt < 64 && !t; ++attempt)
                t = try_sample(g, edge_length, window, rng, static_cast<VertexId>(v), ws);
            if (!t) break;  // 64 straight failures: give up on this apex
            try {
                sum += curvature_from_triangle(t->a, t->b, t->c);
                ++accepted;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::TriangleInequalityViolated && e.kind() != ErrorKind::RootNotFound)
                    throw;
            }
        }
        if (accepted > 0) result[v] = sum / static_cast<double>(accepted);
    });
    return result;
}

double ricci_scalar_from_mean_sectional(double kappa, int dimension) {
    if (dimension < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
    return static_cast<double>(dimension) * (dimension - 1) * kappa;
}

} // namespace dsc
