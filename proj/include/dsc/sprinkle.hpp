#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dsc/graph.hpp"
#include "dsc/manifold.hpp"
#include "dsc/random.hpp"

namespace dsc {

inline constexpr double default_tolerance = 0.25;

/// Hard-annulus geometric graph: u ~ v iff |d(u, v) - l| <= l * p.
/// Pairs whose spheroid distance cannot be computed are treated as non-edges.
GeometricGraph build_annulus_graph(const Manifold& m, std::span<const Point> points,
                                   double connection_length, double tolerance,
                                   unsigned threads = 0);

/// Number of connected components of the annulus graph, without building it.
std::size_t annulus_component_count(const Manifold& m, std::span<const Point> points,
                                    double connection_length, double tolerance,
                                    unsigned threads = 0);

/// Smallest connection length (to 1e-3 relative) whose annulus graph is
/// connected: the returned l gives a connected graph and l * (1 - 1e-3) does
/// not. Throws NoConnectedLength when no tried length connects the points.
double min_connection_length(const Manifold& m, std::span<const Point> points, double tolerance,
                             unsigned threads = 0);

/// Samples n points uniformly on m and connects them with the annulus rule,
/// using `connection_length` if given and the minimal connecting length otherwise.
GeometricGraph sprinkle(const Manifold& m, std::size_t n, double tolerance, Rng& rng,
                        std::optional<double> connection_length = std::nullopt,
                        unsigned threads = 0);

} // namespace dsc
