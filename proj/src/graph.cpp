#include "dsc/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "dsc/error.hpp"

namespace dsc {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
    if (vertex_count > std::numeric_limits<VertexId>::max())
        throw Error(ErrorKind::InvalidArgument, "too many vertices");
    std::vector<std::size_t> degree(vertex_count + 1, 0);
    for (const auto& e : edges) {
        if (e.u >= vertex_count || e.v >= vertex_count)
            throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
        if (e.u == e.v) throw Error(ErrorKind::InvalidArgument, "self-loop");
        ++degree[e.u];
        ++degree[e.v];
    }

    Graph g;
    g.offsets_.assign(vertex_count + 1, 0);
    for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    std::vector<VertexId> adjacency(g.offsets_.back());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
        adjacency[cursor[e.u]++] = e.v;
        adjacency[cursor[e.v]++] = e.u;
    }

    // Sort and deduplicate each row, compacting in place.
    std::size_t write = 0;
    std::vector<std::size_t> offsets(vertex_count + 1, 0);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        offsets[v] = write;
        for (auto it = first; it != last; ++it) adjacency[write++] = *it;
    }
    offsets[vertex_count] = write;
    adjacency.resize(write);
    adjacency.shrink_to_fit();
    g.offsets_ = std::move(offsets);
    g.neighbors_ = std::move(adjacency);
    return g;
}

double Graph::mean_degree() const {
    const auto n = vertex_count();
    return n == 0 ? 0.0 : static_cast<double>(neighbors_.size()) / static_cast<double>(n);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
        for (VertexId v : neighbors(u))
            if (u < v) out.push_back({u, v});
    return out;
}

BfsSummary bfs_hops(const Graph& g, VertexId source, BfsWorkspace& ws) {
    const auto n = g.vertex_count();
    if (source >= n) throw Error(ErrorKind::InvalidArgument, "BFS source out of range");
    ws.hops.assign(n, unreachable);
    ws.queue.resize(n);

    BfsSummary summary;
    std::size_t head = 0, tail = 0;
    ws.hops[source] = 0;
    ws.queue[tail++] = source;
    summary.farthest = source;
    while (head < tail) {
        const VertexId u = ws.queue[head++];
        const HopCount next = ws.hops[u] + 1;
        for (VertexId v : g.neighbors(u)) {
            if (ws.hops[v] != unreachable) continue;
            ws.hops[v] = next;
            ws.queue[tail++] = v;
            if (next > summary.eccentricity || (next == summary.eccentricity && v < summary.farthest)) {
                summary.eccentricity = next;
                summary.farthest = v;
            }
        }
    }
    summary.reached = tail;
    return summary;
}

std::vector<HopCount> bfs_hops(const Graph& g, VertexId source) {
    BfsWorkspace ws;
    bfs_hops(g, source, ws);
    return std::move(ws.hops);
}

bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) throw Error(ErrorKind::InvalidArgument, "empty graph");
    BfsWorkspace ws;
    return bfs_hops(g, 0, ws).reached == g.vertex_count();
}

HopCount diameter_estimate(const Graph& g, Rng& rng) {
    const auto n = g.vertex_count();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty graph");
    BfsWorkspace ws;
    auto start = static_cast<VertexId>(rng.index(n));
    HopCount best = 0;
    for (int sweep = 0; sweep < 4; ++sweep) {
        const auto summary = bfs_hops(g, start, ws);
        if (summary.reached != n) throw Error(ErrorKind::Disconnected, "graph is not connected");
        best = std::max(best, summary.eccentricity);
        start = summary.farthest;
    }
    return best;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& in) {
    std::size_t vertices = 0, count = 0;
    if (!(in >> vertices >> count)) throw Error(ErrorKind::Io, "malformed edge list header");
    std::vector<Edge> edges;
    edges.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        long long u = 0, v = 0;
        if (!(in >> u >> v)) throw Error(ErrorKind::Io, "edge list truncated at edge " + std::to_string(i));
        if (u < 0 || v < 0) throw Error(ErrorKind::Io, "negative vertex id");
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
    return Graph::from_edges(vertices, edges);
}

} // namespace dsc
