#pragma once

#include <span>
#include <vector>

#include "dsc/graph.hpp"
#include "dsc/random.hpp"

namespace dsc {

struct DistortionReport {
    std::size_t pair_count = 0;
    double effective_edge_length = 0.0;
    double distortion = 0.0;
    std::vector<VertexId> sources;
};

/// log(d_manifold(u, v) / d_hops(u, v)) for every source u and every other
/// vertex v, in source order then vertex order. Diagonal pairs are omitted.
/// Throws Disconnected if some vertex is unreachable from a source.
std::vector<double> embedding_log_ratios(const GeometricGraph& gg, std::span<const VertexId> sources,
                                         unsigned threads = 0);

/// Geometric mean of the ratios, exp(mean(log ratios)). Throws EmptyInput.
double effective_edge_length(std::span<const double> log_ratios);

/// Mean absolute deviation of the log ratios from their mean. Throws EmptyInput.
double metric_distortion(std::span<const double> log_ratios);

/// `count` distinct vertices drawn uniformly, sorted; all of them when
/// count >= vertex_count.
std::vector<VertexId> random_sources(std::size_t vertex_count, std::size_t count, Rng& rng);

/// All vertices for graphs up to 2000 vertices, otherwise 64 distinct
/// vertices drawn uniformly; returned sorted.
std::vector<VertexId> default_distortion_sources(std::size_t vertex_count, Rng& rng,
                                                 std::size_t sample_size = 64);

DistortionReport measure_distortion(const GeometricGraph& gg, std::span<const VertexId> sources,
                                    unsigned threads = 0);

} // namespace dsc
