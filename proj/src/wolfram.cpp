#include "dsc/wolfram.hpp"

#include <algorithm>
#include <cmath>

#include "dsc/error.hpp"
#include "dsc/parallel.hpp"

namespace dsc {

std::vector<std::uint64_t> ball_profile(const Graph& g, VertexId v, HopCount max_hops) {
    if (v >= g.vertex_count()) throw Error(ErrorKind::InvalidArgument, "vertex out of range");
    if (max_hops < 1) throw Error(ErrorKind::InvalidArgument, "max_hops must be at least 1");
    const auto hops = bfs_hops(g, v);
    std::vector<std::uint64_t> profile(max_hops + 1, 0);
    for (HopCount h : hops)
        if (h != unreachable && h <= max_hops) ++profile[h];
    for (std::size_t r = 1; r < profile.size(); ++r) profile[r] += profile[r - 1];
    return profile;
}

VolumeFit fit_volume_expansion(std::span<const double> radii, std::span<const double> counts) {
    if (radii.size() != counts.size()) throw Error(ErrorKind::InvalidArgument, "radii and counts differ in length");
    std::vector<double> distinct;
    for (double r : radii)
        if (r != 0.0) distinct.push_back(r * r);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) throw Error(ErrorKind::DegenerateFit, "need two distinct nonzero radii");

    // Modified Gram-Schmidt on the two columns r^2 and r^4.
    const std::size_t n = radii.size();
    std::vector<double> q1(n), q2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = radii[i] * radii[i];
        q1[i] = r2;
        q2[i] = r2 * r2;
    }
    auto dot = [n](const std::vector<double>& x, auto&& y) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
        return s;
    };
    const double r11 = std::sqrt(dot(q1, q1));
    for (auto& x : q1) x /= r11;
    const double r12 = dot(q1, q2);
    for (std::size_t i = 0; i < n; ++i) q2[i] -= r12 * q1[i];
    const double r22 = std::sqrt(dot(q2, q2));
    if (!(r22 > 1e-14 * r11 * r11)) throw Error(ErrorKind::DegenerateFit, "basis is rank deficient");
    for (auto& x : q2) x /= r22;

    const double y1 = dot(q1, counts);
    const double y2 = dot(q2, counts);
    VolumeFit fit;
    fit.beta = y2 / r22;
    fit.alpha = (y1 - r12 * fit.beta) / r11;
    return fit;
}

namespace {

WolframFit fit_selected(std::span<const double> profile, double edge_length,
                        const std::vector<std::size_t>& radii) {
    std::vector<double> xs, ys;
    for (std::size_t r : radii) {
        xs.push_back(static_cast<double>(r) * edge_length);
        ys.push_back(profile[r]);
    }
    const auto fit = fit_volume_expansion(xs, ys);
    if (!(fit.alpha > 0.0)) throw Error(ErrorKind::DegenerateFit, "non-positive area coefficient");
    return {-48.0 * fit.beta / fit.alpha, fit.alpha, radii};
}

std::vector<std::size_t> select_radii(std::size_t max_r, double edge_length, double limit_sq, double k) {
    std::vector<std::size_t> radii;
    for (std::size_t r = 1; r <= max_r; ++r) {
        const double x = static_cast<double>(r) * edge_length;
        if (k * x * x <= limit_sq) radii.push_back(r);
    }
    if (radii.size() < 3) radii = {1, 2, 3};
    return radii;
}

} // namespace

WolframFit wolfram_ricci_K(std::span<const double> profile, double edge_length) {
    if (!(edge_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "edge length must be positive");
    if (profile.size() < 4) throw Error(ErrorKind::DegenerateFit, "need at least 3 radii beyond r = 0");
    const std::size_t max_r = profile.size() - 1;
    const auto first = fit_selected(profile, edge_length, select_radii(max_r, edge_length, 1.0, 1.0));
    return fit_selected(profile, edge_length, select_radii(max_r, edge_length, 1.0, std::abs(first.curvature)));
}

CurvatureReport estimate_wolfram(const Graph& g, double edge_length, const WolframOptions& options) {
    if (options.vertices == 0) throw Error(ErrorKind::InvalidArgument, "need at least one vertex");
    if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
    const std::size_t n = g.vertex_count();
    std::vector<std::optional<double>> results(options.vertices);
    parallel_for(options.vertices, options.threads, [&](std::size_t j) {
        Rng rng = Rng::stream(options.seed, j);
        const auto v = static_cast<VertexId>(rng.index(n));
        const auto hops = bfs_hops(g, v);
        const HopCount ecc = *std::max_element(hops.begin(), hops.end());
        const auto counts = ball_profile(g, v, std::max<HopCount>(1, ecc));
        const std::vector<double> profile(counts.begin(), counts.end());
        try {
            results[j] = wolfram_ricci_K(profile, edge_length).curvature;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateFit) throw;
        }
    });
    std::vector<double> accepted;
    std::map<std::string, std::size_t> rejected;
    for (const auto& r : results) {
        if (r)
            accepted.push_back(*r);
        else
            ++rejected[rejection::degenerate_fit];
    }
    return make_report(std::move(accepted), std::move(rejected), options.vertices, "wolfram-ricci");
}

} // namespace dsc
