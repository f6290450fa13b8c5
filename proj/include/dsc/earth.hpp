#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsc/curvature.hpp"
#include "dsc/manifold.hpp"
#include "dsc/random.hpp"
#include "dsc/stats.hpp"

namespace dsc {

/// Support of the expected radius density, in km.
inline constexpr double expected_radius_min = 6357.0;
inline constexpr double expected_radius_max = 6399.07;

/// Right triangle built at a uniform surface point m: the base runs legB
/// each way along a uniform azimuth, the apex sits legA along the
/// perpendicular. c is the mean of the two apex-to-base-end distances.
/// Redraws when those differ by more than 0.5% or a geodesic solve fails;
/// throws SamplingStalled after 1000 consecutive redraws.
TriangleSample sample_spheroid_triangle(const Spheroid& s, double leg_a, double leg_b, Rng& rng);

/// 1 / sqrt(K); throws NonPositiveCurvature for K <= 0.
double radius_from_curvature(double curvature);

/// 0.077088 / sqrt(R - 6357) on [6357, 6399.07], else 0.
double expected_radius_pdf(double radius);
double expected_radius_cdf(double radius);

/// Largest gap between the empirical CDF of `values` and `cdf`.
template <typename Cdf>
double ks_distance(std::span<const double> values, Cdf&& cdf);

struct EarthOptions {
    std::size_t samples = 10000;
    double leg_min = 500.0;
    double leg_max = 4000.0;
    std::optional<double> max_length;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

struct EarthReport {
    std::vector<double> radii;  // accepted, in draw order
    SummaryStats stats;
    std::map<std::string, std::size_t> rejected;
    std::size_t requested = 0;
};

/// Sample i uses sub-stream (seed, i); legs are uniform in [leg_min, leg_max].
/// Throws TooFewAccepted when fewer than max(10, samples / 100) survive.
EarthReport estimate_earth_radius(const Spheroid& s, const EarthOptions& options);

template <typename Cdf>
double ks_distance(std::span<const double> values, Cdf&& cdf) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return worst;
}

} // namespace dsc
