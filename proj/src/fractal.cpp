#include "dsc/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsc/cosine_rule.hpp"
#include "dsc/error.hpp"
#include "dsc/parallel.hpp"
#include "dsc/stats.hpp"

namespace dsc {

SierpinskiGraph sierpinski_graph(int level) {
    if (level < 0) throw Error(ErrorKind::InvalidArgument, "level must be non-negative");
    if (level > max_sierpinski_level)
        throw Error(ErrorKind::LevelTooLarge, "level " + std::to_string(level) + " exceeds " +
                                                  std::to_string(max_sierpinski_level));
    std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}};
    std::size_t n = 3;
    std::array<VertexId, 3> corners = {0, 1, 2};

    for (int k = 1; k <= level; ++k) {
        // Copy A keeps its ids. B's corner 0 is A's corner 1, C's corner 0 is
        // A's corner 2 and C's corner 1 is B's corner 2.
        std::vector<VertexId> map_b(n), map_c(n);
        auto next = static_cast<VertexId>(n);
        for (VertexId x = 0; x < n; ++x) map_b[x] = x == corners[0] ? corners[1] : next++;
        for (VertexId x = 0; x < n; ++x) {
            if (x == corners[0])
                map_c[x] = corners[2];
            else if (x == corners[1])
                map_c[x] = map_b[corners[2]];
            else
                map_c[x] = next++;
        }
        const std::size_t old_edges = edges.size();
        edges.reserve(3 * old_edges);
        for (std::size_t i = 0; i < old_edges; ++i) edges.push_back({map_b[edges[i].u], map_b[edges[i].v]});
        for (std::size_t i = 0; i < old_edges; ++i) edges.push_back({map_c[edges[i].u], map_c[edges[i].v]});
        corners = {corners[0], map_b[corners[1]], map_c[corners[2]]};
        n = next;
    }

    SierpinskiGraph sg;
    sg.level = level;
    sg.graph = Graph::from_edges(n, edges);
    sg.corners = corners;
    return sg;
}

std::uint64_t FractalHistogram::total() const {
    std::uint64_t t = 0;
    for (const auto& [key, count] : counts) t += count;
    return t;
}

DistanceTable::DistanceTable(const SierpinskiGraph& sg, unsigned threads) : n_(sg.graph.vertex_count()) {
    if (sg.level > max_fractal_distance_level)
        throw Error(ErrorKind::LevelTooLarge, "all-pairs distances limited to level " +
                                                  std::to_string(max_fractal_distance_level));
    d_.resize(n_ * n_);
    parallel_for(n_, threads, [&](std::size_t s) {
        const auto hops = bfs_hops(sg.graph, static_cast<VertexId>(s));
        std::copy(hops.begin(), hops.end(), d_.begin() + static_cast<std::ptrdiff_t>(s * n_));
    });
}

namespace {

bool is_degenerate(HopCount a, HopCount b, HopCount c) {
    return a == 0 || !(a < b + c && b < a + c && c < a + b);
}

// Vertices equidistant from v and w, and the midpoints of v-w.
void pair_sets(const DistanceTable& d, VertexId v, VertexId w, std::vector<VertexId>& apexes,
               std::vector<VertexId>& mids) {
    const HopCount half = d(v, w) / 2;
    apexes.clear();
    mids.clear();
    for (VertexId x = 0; x < d.size(); ++x) {
        const HopCount dv = d(v, x), dw = d(w, x);
        if (dv == dw) {
            apexes.push_back(x);
            if (dv == half) mids.push_back(x);
        }
    }
}

bool valid_base(const DistanceTable& d, VertexId v, VertexId w) {
    const HopCount h = d(v, w);
    return h >= 2 && h % 2 == 0;
}

void visit_row(const DistanceTable& d, VertexId v, const std::function<void(const FractalTriangle&)>& visit,
               const std::function<void(const FractalTriangle&)>& degenerate) {
    std::vector<VertexId> apexes, mids;
    for (auto w = v + 1; w < d.size(); ++w) {
        if (!valid_base(d, v, w)) continue;
        pair_sets(d, v, w, apexes, mids);
        const HopCount b = d(v, w) / 2;
        for (VertexId u : apexes)
            for (VertexId m : mids) {
                const FractalTriangle t{d(u, m), b, d(u, v), u, v, w, m};
                if (is_degenerate(t.a, t.b, t.c)) {
                    if (degenerate) degenerate(t);
                } else {
                    visit(t);
                }
            }
    }
}

} // namespace

void for_each_fractal_triangle(const DistanceTable& d, const std::function<void(const FractalTriangle&)>& visit,
                               const std::function<void(const FractalTriangle&)>& degenerate) {
    for (VertexId v = 0; v < d.size(); ++v) visit_row(d, v, visit, degenerate);
}

std::vector<FractalTriangle> enumerate_fractal_triangles(const SierpinskiGraph& sg) {
    const DistanceTable d(sg);
    std::vector<FractalTriangle> out;
    for_each_fractal_triangle(d, [&](const FractalTriangle& t) { out.push_back(t); });
    return out;
}

FractalHistogram count_fractal_triangles(const SierpinskiGraph& sg, unsigned threads) {
    const DistanceTable d(sg, threads);
    std::vector<FractalHistogram> rows(d.size());
    parallel_for(d.size(), threads, [&](std::size_t v) {
        auto& h = rows[v];
        visit_row(
            d, static_cast<VertexId>(v), [&](const FractalTriangle& t) { ++h.counts[{t.a, t.b, t.c}]; },
            [&](const FractalTriangle&) { ++h.degenerate; });
    });
    FractalHistogram total;
    for (const auto& h : rows) {
        for (const auto& [key, count] : h.counts) total.counts[key] += count;
        total.degenerate += h.degenerate;
    }
    return total;
}

std::vector<FractalTriangle> sample_fractal_triangles(const SierpinskiGraph& sg, const FractalSampleOptions& options) {
    constexpr std::size_t max_consecutive_rejections = 1'000'000;
    const DistanceTable d(sg, options.threads);
    const auto n = static_cast<VertexId>(d.size());

    // Each base pair carries weight |apexes| * |midpoints|, so drawing a pair
    // by weight and then an (apex, midpoint) combination uniformly is uniform
    // over the enumerated quadruples.
    std::vector<std::vector<std::pair<VertexId, std::uint64_t>>> rows(n);
    parallel_for(n, options.threads, [&](std::size_t v) {
        std::vector<VertexId> apexes, mids;
        for (auto w = static_cast<VertexId>(v + 1); w < n; ++w) {
            if (!valid_base(d, static_cast<VertexId>(v), w)) continue;
            pair_sets(d, static_cast<VertexId>(v), w, apexes, mids);
            rows[v].emplace_back(w, std::uint64_t{apexes.size()} * mids.size());
        }
    });
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<std::uint64_t> cumulative;
    std::uint64_t total = 0;
    for (VertexId v = 0; v < n; ++v)
        for (const auto& [w, weight] : rows[v]) {
            if (weight == 0) continue;
            total += weight;
            pairs.emplace_back(v, w);
            cumulative.push_back(total);
        }
    rows.clear();
    if (total == 0) throw Error(ErrorKind::SamplingStalled, "graph has no even-base triangles");

    std::vector<FractalTriangle> out(options.samples);
    parallel_for(options.samples, options.threads, [&](std::size_t i) {
        Rng rng = Rng::stream(options.seed, i);
        std::vector<VertexId> apexes, mids;
        for (std::size_t attempt = 0; attempt < max_consecutive_rejections; ++attempt) {
            const std::uint64_t k = rng.index(total);
            const auto p = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), k) -
                                                    cumulative.begin());
            const std::uint64_t offset = k - (p == 0 ? 0 : cumulative[p - 1]);
            const auto [v, w] = pairs[p];
            pair_sets(d, v, w, apexes, mids);
            const VertexId u = apexes[offset / mids.size()];
            const VertexId m = mids[offset % mids.size()];
            const FractalTriangle t{d(u, m), d(v, w) / 2, d(u, v), u, v, w, m};
            if (!is_degenerate(t.a, t.b, t.c)) {
                out[i] = t;
                return;
            }
        }
        throw Error(ErrorKind::SamplingStalled, "too many consecutive rejections");
    });
    return out;
}

double fractal_curvature(const FractalTriangle& t, double edge_scale, int level) {
    const double k = curvature_from_triangle(t.a, t.b, t.c);
    return k * std::pow(edge_scale, -2.0 * level);
}

namespace {

FractalStats weighted_stats(std::vector<std::pair<double, std::uint64_t>> values, std::uint64_t rejected) {
    std::uint64_t count = 0;
    double sum = 0.0;
    for (const auto& [k, w] : values) {
        count += w;
        sum += k * static_cast<double>(w);
    }
    if (count == 0) throw Error(ErrorKind::TooFewAccepted, "no fractal triangle accepted");
    FractalStats s;
    s.count = count;
    s.rejected = rejected;
    s.mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (const auto& [k, w] : values) ss += (k - s.mean) * (k - s.mean) * static_cast<double>(w);
    s.std_dev = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;

    std::sort(values.begin(), values.end());
    auto nth = [&](std::uint64_t idx) {
        std::uint64_t seen = 0;
        for (const auto& [k, w] : values) {
            seen += w;
            if (idx < seen) return k;
        }
        return values.back().first;
    };
    s.median = count % 2 == 1 ? nth(count / 2) : 0.5 * (nth(count / 2 - 1) + nth(count / 2));
    return s;
}

} // namespace

FractalStats fractal_curvature_stats(std::span<const FractalTriangle> samples, double edge_scale, int level) {
    std::vector<std::pair<double, std::uint64_t>> values;
    std::uint64_t rejected = 0;
    for (const auto& t : samples) {
        try {
            values.emplace_back(fractal_curvature(t, edge_scale, level), 1);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TriangleInequalityViolated && e.kind() != ErrorKind::RootNotFound) throw;
            ++rejected;
        }
    }
    return weighted_stats(std::move(values), rejected);
}

FractalStats fractal_curvature_stats(const FractalHistogram& histogram, double edge_scale, int level) {
    std::vector<std::pair<double, std::uint64_t>> values;
    std::uint64_t rejected = 0;
    for (const auto& [key, count] : histogram.counts) {
        const auto [a, b, c] = key;
        try {
            values.emplace_back(fractal_curvature({a, b, c}, edge_scale, level), count);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TriangleInequalityViolated && e.kind() != ErrorKind::RootNotFound) throw;
            rejected += count;
        }
    }
    return weighted_stats(std::move(values), rejected);
}

std::optional<double> tail_slope(std::span<const double> curvatures, int bins) {
    if (bins < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 bins");
    std::vector<double> positive;
    for (double k : curvatures)
        if (k > 0.0) positive.push_back(k);
    if (positive.size() < 2) return std::nullopt;
    const double lo = median(positive);
    const double hi = *std::max_element(positive.begin(), positive.end());
    if (!(hi > lo)) return std::nullopt;

    const double log_lo = std::log(lo), step = (std::log(hi) - log_lo) / bins;
    std::vector<std::size_t> counts(bins, 0);
    for (double k : positive) {
        if (k < lo) continue;
        auto i = static_cast<int>((std::log(k) - log_lo) / step);
        ++counts[std::clamp(i, 0, bins - 1)];
    }
    std::vector<double> xs, ys;
    const auto total = static_cast<double>(curvatures.size());
    for (int i = 0; i < bins; ++i) {
        if (counts[i] < 5) continue;
        const double left = std::exp(log_lo + i * step), right = std::exp(log_lo + (i + 1) * step);
        xs.push_back(0.5 * (std::log(left) + std::log(right)));
        ys.push_back(std::log(static_cast<double>(counts[i]) / (total * (right - left))));
    }
    if (xs.size() < 3) return std::nullopt;
    return linear_fit(xs, ys).slope;
}

} // namespace dsc
