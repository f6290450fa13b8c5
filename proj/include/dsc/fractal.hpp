#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "dsc/curvature.hpp"
#include "dsc/graph.hpp"
#include "dsc/random.hpp"

namespace dsc {

inline constexpr int max_sierpinski_level = 12;
inline constexpr int max_fractal_distance_level = 7;  // all-pairs table limit

struct SierpinskiGraph {
    int level = 0;
    Graph graph;
    std::array<VertexId, 3> corners{};
};

/// Sierpinski graph of the given level: three copies of level n - 1 glued
/// pairwise at corners, starting from K3. 3 (3^n + 1) / 2 vertices, 3^(n+1)
/// edges. Throws LevelTooLarge above max_sierpinski_level.
SierpinskiGraph sierpinski_graph(int level);

/// Hop counts (a, b, c) of one fractal triangle, plus the vertices used.
struct FractalTriangle {
    HopCount a = 0;
    HopCount b = 0;
    HopCount c = 0;
    VertexId apex = 0;
    VertexId base_end1 = 0;  // base_end1 < base_end2
    VertexId base_end2 = 0;
    VertexId midpoint = 0;
};

using TriangleKey = std::tuple<HopCount, HopCount, HopCount>;

struct FractalHistogram {
    std::map<TriangleKey, std::uint64_t> counts;  // keyed by (a, b, c)
    std::uint64_t degenerate = 0;
    std::uint64_t total() const;
};

/// All-pairs hop table for a Sierpinski graph, row-major.
class DistanceTable {
public:
    explicit DistanceTable(const SierpinskiGraph& sg, unsigned threads = 0);
    std::size_t size() const { return n_; }
    HopCount operator()(VertexId u, VertexId v) const { return d_[std::size_t{u} * n_ + v]; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint16_t> d_;
};

/// Visits every (u, {v, w}, m) with d(u,v) = d(u,w), d(v,w) even and >= 2,
/// and m halfway along a shortest v-w path; each qualifying midpoint is its
/// own triangle. Degenerate ones (a = 0 or a triangle inequality equality)
/// go to `degenerate` instead of `visit`. Calls happen in (v, w, u, m) order
/// on the calling thread.
void for_each_fractal_triangle(const DistanceTable& d, const std::function<void(const FractalTriangle&)>& visit,
                               const std::function<void(const FractalTriangle&)>& degenerate = {});

std::vector<FractalTriangle> enumerate_fractal_triangles(const SierpinskiGraph& sg);

/// Histogram of (a, b, c) over the full enumeration, parallel over v.
FractalHistogram count_fractal_triangles(const SierpinskiGraph& sg, unsigned threads = 0);

struct FractalSampleOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

/// Draws triangles uniformly from the set visited by
/// for_each_fractal_triangle, degenerate ones rejected and redrawn. Sample i
/// uses sub-stream (seed, i). Throws SamplingStalled when no valid triangle
/// exists or after 10^6 consecutive rejections.
std::vector<FractalTriangle> sample_fractal_triangles(const SierpinskiGraph& sg, const FractalSampleOptions& options);

struct FractalStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;
    std::uint64_t rejected = 0;
};

/// K for unit edge lengths, scaled by edge_scale^(-2 level).
double fractal_curvature(const FractalTriangle& t, double edge_scale, int level);

/// Statistics of the scaled K distribution; triangles the root solver
/// rejects are counted in `rejected`. Throws TooFewAccepted if none remain.
FractalStats fractal_curvature_stats(std::span<const FractalTriangle> samples, double edge_scale, int level);
FractalStats fractal_curvature_stats(const FractalHistogram& histogram, double edge_scale, int level);

/// Slope of log density against log K over the positive tail (K above the
/// positive median), from a histogram with `bins` log-spaced bins. Bins with
/// fewer than 5 entries are skipped. nullopt with fewer than 3 usable bins.
std::optional<double> tail_slope(std::span<const double> curvatures, int bins = 20);

} // namespace dsc
