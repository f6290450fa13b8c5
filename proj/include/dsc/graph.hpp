#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dsc/manifold.hpp"
#include "dsc/random.hpp"

namespace dsc {

using VertexId = std::uint32_t;
using HopCount = std::uint32_t;

inline constexpr HopCount unreachable = std::numeric_limits<HopCount>::max();

struct Edge {
    VertexId u;
    VertexId v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph in compressed sparse row form.
/// Neighbor lists are sorted ascending.
class Graph {
public:
    Graph() = default;

    /// Builds the graph from an undirected edge list. Duplicate edges (in
    /// either orientation) are merged; self-loops and out-of-range ids throw
    /// InvalidArgument.
    static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return neighbors_.size() / 2; }
    double mean_degree() const;

    std::span<const VertexId> neighbors(VertexId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }

    bool has_edge(VertexId u, VertexId v) const;

    /// Edges with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> neighbors_;
};

/// Reusable BFS state; one per worker.
struct BfsWorkspace {
    std::vector<HopCount> hops;
    std::vector<VertexId> queue;
};

struct BfsSummary {
    HopCount eccentricity = 0;  // largest finite hop count
    VertexId farthest = 0;      // smallest id attaining it
    std::size_t reached = 0;
};

/// Unweighted shortest-path hop counts from source into ws.hops;
/// unreachable vertices hold `unreachable`.
BfsSummary bfs_hops(const Graph& g, VertexId source, BfsWorkspace& ws);
std::vector<HopCount> bfs_hops(const Graph& g, VertexId source);

bool is_connected(const Graph& g);

/// Lower bound on the hop diameter from four double-sweep BFS passes,
/// starting at a random vertex. Throws Disconnected.
HopCount diameter_estimate(const Graph& g, Rng& rng);

/// Text edge list: "V E" header then one "u v" line per edge with u < v.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

/// Random geometric graph together with the data that generated it.
struct GeometricGraph {
    Graph graph;
    Manifold manifold;
    std::vector<Point> coordinates;
    double connection_length = 0.0;
    double tolerance = 0.0;
    std::optional<double> effective_edge_length;
};

} // namespace dsc
