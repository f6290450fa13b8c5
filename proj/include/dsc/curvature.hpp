#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsc/cosine_rule.hpp"
#include "dsc/graph.hpp"
#include "dsc/random.hpp"
#include "dsc/stats.hpp"

namespace dsc {

struct TriangleProvenance {
    VertexId apex = 0;
    VertexId base_end1 = 0;
    VertexId base_end2 = 0;
    VertexId midpoint = 0;
    HopCount median_hops = 0;     // apex -> midpoint
    HopCount half_base_hops = 0;  // midpoint -> either base end
    HopCount side_hops = 0;       // apex -> either base end
};

/// Right triangle split off an isosceles one: a is the median from the apex
/// to the base midpoint, b half the base and c the equal sides.
struct TriangleSample {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    std::optional<TriangleProvenance> provenance;
};

struct HopWindow {
    HopCount min_hops = 2;
    HopCount max_hops = 2;
};

/// ceil(D / 3) .. D with D the double-sweep diameter estimate (min clamped to 2).
HopWindow default_hop_window(const Graph& g, Rng& rng);

/// One approximate right triangle from the graph metric, lengths scaled by
/// `edge_length`. The apex is uniform unless fixed. Throws NoCandidate after
/// `max_attempts` failed constructions.
TriangleSample sample_triangle(const Graph& g, double edge_length, HopWindow window, Rng& rng,
                               std::optional<VertexId> apex = std::nullopt, int max_attempts = 64);

/// Rejection tallies, keyed by reason.
namespace rejection {
inline constexpr const char* no_candidate = "no_candidate";
inline constexpr const char* exceeds_max_length = "exceeds_max_length";
inline constexpr const char* triangle_inequality = "triangle_inequality";
inline constexpr const char* root_not_found = "root_not_found";
inline constexpr const char* degenerate_fit = "degenerate_fit";
inline constexpr const char* negative_curvature = "negative_curvature";
inline constexpr const char* asymmetric_triangle = "asymmetric_triangle";
} // namespace rejection

struct CurvatureReport {
    std::string estimator = "sectional";
    std::vector<double> samples;  // accepted K values in draw order
    SummaryStats stats;
    std::map<std::string, std::size_t> rejected;
    std::size_t multiple_root_count = 0;
    std::size_t requested = 0;
};

/// Builds a report from accepted samples. Throws TooFewAccepted when fewer
/// than max(10, requested / 100) samples were accepted.
CurvatureReport make_report(std::vector<double> samples, std::map<std::string, std::size_t> rejected,
                            std::size_t requested, std::string estimator = "sectional");

struct CurvatureOptions {
    std::size_t samples = 1000;
    HopWindow window;
    std::optional<double> max_length;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

/// Mean-of-samples sectional curvature. Sample i draws from sub-stream
/// (seed, i), so the report does not depend on the thread count.
CurvatureReport estimate_curvature(const Graph& g, double edge_length, const CurvatureOptions& options);

/// Mean K over triangles with each vertex as apex; nullopt where no sample
/// was accepted. Vertex v draws from sub-stream (seed, v).
std::vector<std::optional<double>> vertex_curvature(const Graph& g, double edge_length,
                                                    std::size_t samples_per_vertex, HopWindow window,
                                                    std::uint64_t seed, unsigned threads = 0);

/// Ricci scalar n (n - 1) kappa from the mean sectional curvature kappa.
double ricci_scalar_from_mean_sectional(double kappa, int dimension);

} // namespace dsc
