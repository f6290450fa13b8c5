#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "dsc/error.hpp"
#include "dsc/graph.hpp"

using namespace dsc;

namespace {

Graph cycle(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back({VertexId(i), VertexId((i + 1) % n)});
    return Graph::from_edges(n, e);
}

Graph path(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({VertexId(i), VertexId(i + 1)});
    return Graph::from_edges(n, e);
}

Graph complete(std::size_t n) {
    std::vector<Edge> e;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph::from_edges(n, e);
}

Graph random_graph(std::size_t n, double density, Rng& rng) {
    std::vector<Edge> e;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            if (rng.uniform() < density) e.push_back({i, j});
    return Graph::from_edges(n, e);
}

} // namespace

TEST_CASE("construction merges duplicates and rejects bad edges") {
    const std::vector<Edge> e = {{0, 1}, {1, 0}, {1, 2}, {0, 1}};
    const auto g = Graph::from_edges(3, e);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.mean_degree() == doctest::Approx(4.0 / 3.0));
    const std::vector<Edge> loop = {{1, 1}};
    CHECK_THROWS_AS(Graph::from_edges(3, loop), Error);
    const std::vector<Edge> out_of_range = {{0, 3}};
    CHECK_THROWS_AS(Graph::from_edges(3, out_of_range), Error);
}

TEST_CASE("adjacency is symmetric and sorted") {
    Rng rng(1);
    const auto g = random_graph(40, 0.2, rng);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        const auto nb = g.neighbors(u);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        for (VertexId v : nb) {
            CHECK(v != u);
            CHECK(g.has_edge(v, u));
        }
    }
}

TEST_CASE("bfs examples") {
    CHECK(bfs_hops(path(3), 0) == std::vector<HopCount>{0, 1, 2});
    const std::vector<Edge> two = {{0, 1}, {2, 3}};
    CHECK(bfs_hops(Graph::from_edges(4, two), 0) == std::vector<HopCount>{0, 1, unreachable, unreachable});
    CHECK(bfs_hops(cycle(12), 0)[7] == 5);
}

TEST_CASE("bfs matches Floyd-Warshall") {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + rng.index(46);
        const auto g = random_graph(n, rng.uniform(0.02, 0.3), rng);
        const std::uint64_t inf = 1u << 30;
        std::vector<std::uint64_t> d(n * n, inf);
        for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
        for (const auto& e : g.edges()) d[e.u * n + e.v] = d[e.v * n + e.u] = 1;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
        BfsWorkspace ws;
        for (VertexId s = 0; s < n; ++s) {
            bfs_hops(g, s, ws);
            for (std::size_t v = 0; v < n; ++v) {
                const std::uint64_t expect = d[s * n + v];
                CHECK(ws.hops[v] == (expect >= inf ? unreachable : expect));
            }
        }
    }
}

TEST_CASE("hop metric is symmetric and satisfies the triangle inequality") {
    Rng rng(3);
    const auto g = cycle(30);
    std::vector<std::vector<HopCount>> rows;
    for (VertexId s = 0; s < 30; ++s) rows.push_back(bfs_hops(g, s));
    for (int i = 0; i < 500; ++i) {
        const auto a = rng.index(30), b = rng.index(30), c = rng.index(30);
        CHECK(rows[a][b] == rows[b][a]);
        CHECK(rows[a][b] <= rows[a][c] + rows[c][b]);
    }
}

TEST_CASE("connectivity") {
    CHECK(is_connected(cycle(12)));
    const std::vector<Edge> triangles = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
    CHECK_FALSE(is_connected(Graph::from_edges(6, triangles)));
    CHECK(is_connected(Graph::from_edges(1, {})));
}

TEST_CASE("diameter estimates") {
    Rng rng(4);
    CHECK(diameter_estimate(path(10), rng) == 9);
    CHECK(diameter_estimate(cycle(12), rng) == 6);
    CHECK(diameter_estimate(complete(5), rng) == 1);
    const std::vector<Edge> two = {{0, 1}, {2, 3}};
    CHECK_THROWS_AS(diameter_estimate(Graph::from_edges(4, two), rng), Error);
}

TEST_CASE("edge list round trip") {
    Rng rng(5);
    const auto g = random_graph(25, 0.3, rng);
    std::stringstream ss;
    write_edge_list(ss, g);
    const auto back = read_edge_list(ss);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());

    std::stringstream header;
    write_edge_list(header, path(3));
    CHECK(header.str() == "3 2\n0 1\n1 2\n");

    std::stringstream broken("3 2\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(broken), Error);
}
