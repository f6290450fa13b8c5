#include "dsc/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dsc/error.hpp"
#include "dsc/parallel.hpp"

namespace dsc {

std::vector<double> embedding_log_ratios(const GeometricGraph& gg, std::span<const VertexId> sources,
                                         unsigned threads) {
    if (sources.empty()) throw Error(ErrorKind::EmptyInput, "no distortion sources");
    const auto& g = gg.graph;
    const std::size_t n = g.vertex_count();
    if (gg.coordinates.size() != n)
        throw Error(ErrorKind::InvalidArgument, "coordinate count does not match vertex count");

    std::vector<std::vector<double>> rows(sources.size());
    parallel_for(sources.size(), threads, [&](std::size_t k) {
        BfsWorkspace ws;
        const VertexId u = sources[k];
        if (bfs_hops(g, u, ws).reached != n)
            throw Error(ErrorKind::Disconnected, "graph is not connected");
        auto& row = rows[k];
        row.reserve(n - 1);
        for (VertexId v = 0; v < n; ++v) {
            if (v == u) continue;
            const double d = geodesic_distance(gg.manifold, gg.coordinates[u], gg.coordinates[v]);
            row.push_back(std::log(d / static_cast<double>(ws.hops[v])));
        }
    });

    std::vector<double> out;
    out.reserve(sources.size() * (n - 1));
    for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
    return out;
}

namespace {

double mean_of(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "no embedding ratios");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

} // namespace

double effective_edge_length(std::span<const double> log_ratios) {
    return std::exp(mean_of(log_ratios));
}

double metric_distortion(std::span<const double> log_ratios) {
    const double mean = mean_of(log_ratios);
    double sum = 0.0;
    for (double v : log_ratios) sum += std::abs(v - mean);
    return sum / static_cast<double>(log_ratios.size());
}

std::vector<VertexId> random_sources(std::size_t vertex_count, std::size_t count, Rng& rng) {
    std::vector<VertexId> perm(vertex_count);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    if (count >= vertex_count) return perm;
    // Partial Fisher-Yates over an index permutation.
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + rng.index(vertex_count - i);
        std::swap(perm[i], perm[j]);
    }
    perm.resize(count);
    std::sort(perm.begin(), perm.end());
    return perm;
}

std::vector<VertexId> default_distortion_sources(std::size_t vertex_count, Rng& rng,
                                                 std::size_t sample_size) {
    return random_sources(vertex_count, vertex_count <= 2000 ? vertex_count : sample_size, rng);
}

DistortionReport measure_distortion(const GeometricGraph& gg, std::span<const VertexId> sources,
                                    unsigned threads) {
    const auto logs = embedding_log_ratios(gg, sources, threads);
    DistortionReport report;
    report.pair_count = logs.size();
    report.effective_edge_length = effective_edge_length(logs);
    report.distortion = metric_distortion(logs);
    report.sources.assign(sources.begin(), sources.end());
    return report;
}

} // namespace dsc
