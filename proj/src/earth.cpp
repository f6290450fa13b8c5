#include "dsc/earth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsc/cosine_rule.hpp"
#include "dsc/error.hpp"
#include "dsc/parallel.hpp"

namespace dsc {

namespace {

constexpr double pdf_scale = 0.077088;

} // namespace

TriangleSample sample_spheroid_triangle(const Spheroid& s, double leg_a, double leg_b, Rng& rng) {
    validate(s);
    const double quarter = 0.5 * std::numbers::pi * s.polar_radius;
    if (!(leg_a > 0.0 && leg_b > 0.0) || leg_a >= quarter || leg_b >= quarter)
        throw Error(ErrorKind::InvalidArgument, "legs must lie in (0, quarter of the minor circumference)");
    constexpr int max_redraws = 1000;
    for (int attempt = 0; attempt < max_redraws; ++attempt) {
        const Point m = sample_point(s, rng);
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        try {
            const Point v = geodesic_direct(s, m, theta, leg_b);
            const Point w = geodesic_direct(s, m, theta + std::numbers::pi, leg_b);
            const Point u = geodesic_direct(s, m, theta + 0.5 * std::numbers::pi, leg_a);
            const double c1 = geodesic_distance(s, u, v);
            const double c2 = geodesic_distance(s, u, w);
            if (std::abs(c1 - c2) > 0.005 * std::max(c1, c2)) continue;
            TriangleSample t;
            t.a = leg_a;
            t.b = leg_b;
            t.c = 0.5 * (c1 + c2);
            return t;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SpheroidNonConvergence) throw;
        }
    }
    throw Error(ErrorKind::SamplingStalled, "no symmetric spheroid triangle after 1000 draws");
}

double radius_from_curvature(double curvature) {
    if (!(curvature > 0.0)) throw Error(ErrorKind::NonPositiveCurvature, "radius needs positive curvature");
    return 1.0 / std::sqrt(curvature);
}

double expected_radius_pdf(double radius) {
    if (radius <= expected_radius_min || radius > expected_radius_max) return 0.0;
    return pdf_scale / std::sqrt(radius - expected_radius_min);
}

double expected_radius_cdf(double radius) {
    if (radius <= expected_radius_min) return 0.0;
    return std::min(1.0, 2.0 * pdf_scale * std::sqrt(radius - expected_radius_min));
}

EarthReport estimate_earth_radius(const Spheroid& s, const EarthOptions& options) {
    validate(s);
    if (options.samples == 0) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
    if (!(options.leg_min > 0.0 && options.leg_min <= options.leg_max))
        throw Error(ErrorKind::InvalidArgument, "leg range must satisfy 0 < min <= max");

    std::vector<double> radius(options.samples, 0.0);
    std::vector<const char*> reason(options.samples, nullptr);
    parallel_for(options.samples, options.threads, [&](std::size_t i) {
        Rng rng = Rng::stream(options.seed, i);
        const double leg_a = rng.uniform(options.leg_min, options.leg_max);
        const double leg_b = rng.uniform(options.leg_min, options.leg_max);
        const auto t = sample_spheroid_triangle(s, leg_a, leg_b, rng);
        if (options.max_length && std::max({t.a, t.b, t.c}) > *options.max_length) {
            reason[i] = rejection::exceeds_max_length;
            return;
        }
        try {
            const double k = curvature_from_triangle(t.a, t.b, t.c);
            if (k <= 0.0) {
                reason[i] = rejection::negative_curvature;
                return;
            }
            radius[i] = radius_from_curvature(k);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TriangleInequalityViolated)
                reason[i] = rejection::triangle_inequality;
            else if (e.kind() == ErrorKind::RootNotFound)
                reason[i] = rejection::root_not_found;
            else
                throw;
        }
    });

    EarthReport report;
    report.requested = options.samples;
    for (std::size_t i = 0; i < options.samples; ++i) {
        if (reason[i])
            ++report.rejected[reason[i]];
        else
            report.radii.push_back(radius[i]);
    }
    if (report.radii.size() < std::max<std::size_t>(10, options.samples / 100))
        throw Error(ErrorKind::TooFewAccepted, "only " + std::to_string(report.radii.size()) + " radii accepted");
    report.stats = summarize(report.radii);
    return report;
}

} // namespace dsc
