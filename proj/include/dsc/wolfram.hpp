#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsc/curvature.hpp"
#include "dsc/graph.hpp"

namespace dsc {

/// Cumulative ball sizes |B_r(v)| for r = 0 .. max_hops, from one BFS.
/// Radii beyond the eccentricity of v repeat the full count.
std::vector<std::uint64_t> ball_profile(const Graph& g, VertexId v, HopCount max_hops);

struct VolumeFit {
    double alpha = 0.0;  // coefficient of r^2
    double beta = 0.0;   // coefficient of r^4
};

/// Least squares for counts ~ alpha r^2 + beta r^4 (no constant term).
/// Throws DegenerateFit for fewer than 2 distinct nonzero radii.
VolumeFit fit_volume_expansion(std::span<const double> radii, std::span<const double> counts);

struct WolframFit {
    double curvature = 0.0;    // K = -48 beta / alpha
    double normalization = 0.0;  // alpha
    std::vector<std::size_t> radii_used;  // hop radii of the final fit
};

/// Fits V_r = a r^2 (1 - K r^2 / 48) to profile[r] at physical radii
/// r * edge_length, r >= 1. The first pass keeps r * edge_length <= 1, the
/// second |K| (r * edge_length)^2 <= 1. A pass with fewer than 3 qualifying
/// radii falls back to the 3 smallest. Throws DegenerateFit when the profile
/// has fewer than 3 radii beyond r = 0 or alpha <= 0.
WolframFit wolfram_ricci_K(std::span<const double> profile, double edge_length);

struct WolframOptions {
    std::size_t vertices = 100;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

/// Per-vertex K at uniformly drawn centres (centre j from sub-stream
/// (seed, j)); failed fits are tallied as degenerate_fit.
CurvatureReport estimate_wolfram(const Graph& g, double edge_length, const WolframOptions& options);

} // namespace dsc
