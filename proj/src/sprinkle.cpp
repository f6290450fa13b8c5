#include "dsc/sprinkle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "dsc/error.hpp"
#include "dsc/parallel.hpp"

namespace dsc {

namespace {

// Cheap monotone stand-in for the geodesic distance, used to skip pairs that
// are certainly outside the annulus. Pairs inside the (slightly widened)
// proxy band are confirmed with the exact geodesic distance.
class PairKernel {
public:
    PairKernel(const Manifold& m, std::span<const Point> points) : manifold_(m), points_(points) {
        const std::size_t n = points.size();
        kind_ = static_cast<Kind>(m.index());
        data_.resize(n * 4);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = points[i].c;
            double* d = &data_[i * 4];
            switch (kind_) {
                case Kind::Sphere2:
                case Kind::Sphere3: {
                    const double r = kind_ == Kind::Sphere2 ? std::get<Sphere2>(m).radius
                                                           : std::get<Sphere3>(m).radius;
                    for (int k = 0; k < 4; ++k) d[k] = p[k] / r;
                    break;
                }
                case Kind::Hyperbolic: {
                    const double k = std::get<HyperbolicDisk>(m).curvature_scale;
                    d[0] = std::cosh(p[0] / k);
                    d[1] = std::sinh(p[0] / k);
                    d[2] = std::cos(p[1]);
                    d[3] = std::sin(p[1]);
                    break;
                }
                case Kind::Euclidean:
                    d[0] = p[0];
                    d[1] = p[1];
                    break;
                case Kind::Spheroid: {
                    // Geocentric cartesian coordinates; chord length bounds the geodesic from below.
                    const auto& s = std::get<Spheroid>(m);
                    const double e2 = s.eccentricity_squared();
                    const double sl = std::sin(p[0]), cl = std::cos(p[0]);
                    const double nrad = s.equatorial_radius / std::sqrt(1.0 - e2 * sl * sl);
                    d[0] = nrad * cl * std::cos(p[1]);
                    d[1] = nrad * cl * std::sin(p[1]);
                    d[2] = nrad * (1.0 - e2) * sl;
                    break;
                }
            }
        }
    }

    struct Band {
        double lo;
        double hi;
        double length;
        double tolerance;
    };

    Band band(double l, double p) const {
        const double dmin = l * (1.0 - p);
        const double dmax = l * (1.0 + p);
        double lo = 0, hi = 0;
        switch (kind_) {
            case Kind::Sphere2:
            case Kind::Sphere3:
                lo = 1.0 - std::cos(std::min(dmin / radius(), std::numbers::pi));
                hi = 1.0 - std::cos(std::min(dmax / radius(), std::numbers::pi));
                break;
            case Kind::Hyperbolic: {
                const double k = std::get<HyperbolicDisk>(manifold_).curvature_scale;
                lo = std::cosh(dmin / k);
                hi = std::cosh(std::min(dmax / k, 700.0));
                break;
            }
            case Kind::Euclidean:
                lo = dmin * dmin;
                hi = dmax * dmax;
                break;
            case Kind::Spheroid:
                lo = -std::numeric_limits<double>::infinity();
                hi = dmax;
                break;
        }
        lo -= 1e-9 * std::abs(lo) + 1e-14;
        hi += 1e-9 * std::abs(hi) + 1e-14;
        return {lo, hi, l, p};
    }

    bool is_edge(std::size_t i, std::size_t j, const Band& b) const {
        const double proxy = proxy_of(i, j);
        if (proxy < b.lo || proxy > b.hi) return false;
        double d = 0.0;
        try {
            d = geodesic_distance(manifold_, points_[i], points_[j]);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SpheroidNonConvergence) return false;
            throw;
        }
        return std::abs(d - b.length) <= b.length * b.tolerance;
    }

private:
    enum class Kind { Sphere2 = 0, Sphere3 = 1, Hyperbolic = 2, Euclidean = 3, Spheroid = 4 };

    double radius() const {
        return kind_ == Kind::Sphere2 ? std::get<Sphere2>(manifold_).radius
                                      : std::get<Sphere3>(manifold_).radius;
    }

    double proxy_of(std::size_t i, std::size_t j) const {
        const double* a = &data_[i * 4];
        const double* b = &data_[j * 4];
        switch (kind_) {
            case Kind::Sphere2:
            case Kind::Sphere3:
                return 1.0 - (a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]);
            case Kind::Hyperbolic:
                return a[0] * b[0] - a[1] * b[1] * (a[2] * b[2] + a[3] * b[3]);
            case Kind::Euclidean: {
                const double dx = a[0] - b[0], dy = a[1] - b[1];
                return dx * dx + dy * dy;
            }
            case Kind::Spheroid: {
                const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
                return std::sqrt(dx * dx + dy * dy + dz * dz);
            }
        }
        return 0.0;
    }

    const Manifold& manifold_;
    std::span<const Point> points_;
    Kind kind_;
    std::vector<double> data_;
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), components_(n) {
        std::iota(parent_.begin(), parent_.end(), VertexId{0});
    }

    VertexId find(VertexId x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
        --components_;
    }

    std::size_t components() const { return components_; }

private:
    std::vector<VertexId> parent_;
    std::size_t components_;
};

// Row ranges [begin, end) with roughly equal numbers of (i, j > i) pairs.
std::vector<std::pair<std::size_t, std::size_t>> row_blocks(std::size_t n, std::size_t blocks) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n == 0) return out;
    blocks = std::max<std::size_t>(1, std::min(blocks, n));
    const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    std::size_t begin = 0;
    double acc = 0.0;
    for (std::size_t b = 1; b <= blocks && begin < n; ++b) {
        const double target = total * static_cast<double>(b) / static_cast<double>(blocks);
        std::size_t end = begin;
        while (end < n && (acc < target || end == begin)) {
            acc += static_cast<double>(n - 1 - end);
            ++end;
        }
        if (b == blocks) end = n;
        out.emplace_back(begin, end);
        begin = end;
    }
    return out;
}

void check_tolerance(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must lie in (0, 1]");
}

} // namespace

GeometricGraph build_annulus_graph(const Manifold& m, std::span<const Point> points,
                                   double connection_length, double tolerance, unsigned threads) {
    validate(m);
    check_tolerance(tolerance);
    if (!(connection_length > 0.0))
        throw Error(ErrorKind::InvalidArgument, "connection length must be positive");
    const std::size_t n = points.size();
    const PairKernel kernel(m, points);
    const auto band = kernel.band(connection_length, tolerance);
    const auto blocks = row_blocks(n, 4 * resolve_threads(threads));

    std::vector<std::vector<Edge>> found(blocks.size());
    parallel_for(blocks.size(), threads, [&](std::size_t b) {
        auto& out = found[b];
        for (std::size_t i = blocks[b].first; i < blocks[b].second; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (kernel.is_edge(i, j, band))
                    out.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
    });

    std::vector<Edge> edges;
    for (auto& block : found) edges.insert(edges.end(), block.begin(), block.end());

    // Re-verify a deterministic 1% sample of edges against the annulus rule.
    for (std::size_t k = 0; k < edges.size(); k += 100) {
        const double d = geodesic_distance(m, points[edges[k].u], points[edges[k].v]);
        if (std::abs(d - connection_length) > connection_length * tolerance)
            throw Error(ErrorKind::InternalError, "annulus edge failed re-verification");
    }

    GeometricGraph gg;
    gg.graph = Graph::from_edges(n, edges);
    gg.manifold = m;
    gg.coordinates.assign(points.begin(), points.end());
    gg.connection_length = connection_length;
    gg.tolerance = tolerance;
    return gg;
}

std::size_t annulus_component_count(const Manifold& m, std::span<const Point> points,
                                    double connection_length, double tolerance, unsigned threads) {
    const std::size_t n = points.size();
    if (n == 0) return 0;
    const PairKernel kernel(m, points);
    const auto band = kernel.band(connection_length, tolerance);
    const unsigned workers = resolve_threads(threads);

    if (workers == 1) {
        DisjointSets sets(n);
        for (std::size_t i = 0; i < n && sets.components() > 1; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (kernel.is_edge(i, j, band)) {
                    sets.unite(static_cast<VertexId>(i), static_cast<VertexId>(j));
                    if (sets.components() == 1) break;
                }
        return sets.components();
    }

    const auto blocks = row_blocks(n, workers);
    std::vector<DisjointSets> partial(blocks.size(), DisjointSets(n));
    parallel_for(blocks.size(), threads, [&](std::size_t b) {
        auto& sets = partial[b];
        for (std::size_t i = blocks[b].first; i < blocks[b].second; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (kernel.is_edge(i, j, band))
                    sets.unite(static_cast<VertexId>(i), static_cast<VertexId>(j));
    });
    DisjointSets merged(n);
    for (auto& sets : partial)
        for (VertexId v = 0; v < n; ++v) merged.unite(v, sets.find(v));
    return merged.components();
}

double min_connection_length(const Manifold& m, std::span<const Point> points, double tolerance,
                             unsigned threads) {
    validate(m);
    check_tolerance(tolerance);
    if (points.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two points");

    constexpr int bisection_steps = 24;
    constexpr double verify_ratio = 1.0 - 1e-3;
    const double diameter = manifold_diameter(m);
    const double shrink = std::max((1.0 - tolerance) / (1.0 + tolerance), 0.5);
    const double floor = diameter * 1e-9;

    double best_tried = diameter;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    auto connected = [&](double l) {
        const auto comps = annulus_component_count(m, points, l, tolerance, threads);
        if (comps < fewest || (comps == fewest && l < best_tried)) {
            fewest = comps;
            best_tried = l;
        }
        return comps == 1;
    };

    // Connectivity is not monotone in l (large annuli exclude short pairs),
    // so scan down from the diameter until a connected length is found.
    // Consecutive annuli of this scan overlap.
    double hi = diameter;
    while (!connected(hi)) {
        hi *= shrink;
        if (hi < floor)
            throw Error(ErrorKind::NoConnectedLength,
                        "no connection length connects the points; best tried l = " +
                            std::to_string(best_tried) + " with " + std::to_string(fewest) +
                            " components");
    }

    for (int restart = 0; restart < 64; ++restart) {
        // Walk down to the first disconnected length below hi.
        double lo = hi * shrink;
        while (lo >= floor && connected(lo)) {
            hi = lo;
            lo = hi * shrink;
        }
        if (lo < floor) lo = 0.0;
        for (int step = 0; step < bisection_steps; ++step) {
            const double mid = 0.5 * (lo + hi);
            if (connected(mid))
                hi = mid;
            else
                lo = mid;
        }
        const double probe = hi * verify_ratio;
        if (!connected(probe)) return hi;
        hi = probe;
    }
    throw Error(ErrorKind::InternalError, "connection length search failed to settle");
}

GeometricGraph sprinkle(const Manifold& m, std::size_t n, double tolerance, Rng& rng,
                        std::optional<double> connection_length, unsigned threads) {
    validate(m);
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "sprinkle needs at least two points");
    std::vector<Point> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) points.push_back(sample_point(m, rng));
    const double l = connection_length ? *connection_length
                                       : min_connection_length(m, points, tolerance, threads);
    return build_annulus_graph(m, points, l, tolerance, threads);
}

} // namespace dsc
