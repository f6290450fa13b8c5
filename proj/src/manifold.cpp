#include "dsc/manifold.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dsc/error.hpp"

namespace dsc {

namespace {

constexpr double pi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be positive and finite");
}

// Angle between two embedding vectors; well conditioned at 0 and pi.
double embedded_angle(const Point& p, const Point& q, int dims) {
    double diff = 0.0, sum = 0.0;
    for (int i = 0; i < dims; ++i) {
        const double d = p.c[i] - q.c[i];
        const double s = p.c[i] + q.c[i];
        diff += d * d;
        sum += s * s;
    }
    return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

Point sample_sphere(double radius, int dims, Rng& rng) {
    Point p;
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (int i = 0; i < dims; ++i) {
            p.c[i] = rng.normal();
            norm2 += p.c[i] * p.c[i];
        }
    } while (norm2 < 1e-300);
    const double scale = radius / std::sqrt(norm2);
    for (int i = 0; i < dims; ++i) p.c[i] *= scale;
    return p;
}

double wrap_longitude(double lon) {
    lon = std::remainder(lon, 2.0 * pi);
    return lon == pi ? -pi : lon;
}

struct VincentyCoefficients {
    double a_coef;
    double b_coef;
};

VincentyCoefficients series(double cos2_alpha, double a, double b) {
    const double u2 = cos2_alpha * (a * a - b * b) / (b * b);
    const double a_coef = 1.0 + u2 / 16384.0 * (4096.0 + u2 * (-768.0 + u2 * (320.0 - 175.0 * u2)));
    const double b_coef = u2 / 1024.0 * (256.0 + u2 * (-128.0 + u2 * (74.0 - 47.0 * u2)));
    return {a_coef, b_coef};
}

double delta_sigma(double b_coef, double sin_sigma, double cos_sigma, double cos_2sm) {
    const double c2 = cos_2sm * cos_2sm;
    return b_coef * sin_sigma *
           (cos_2sm + b_coef / 4.0 *
                          (cos_sigma * (-1.0 + 2.0 * c2) -
                           b_coef / 6.0 * cos_2sm * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                               (-3.0 + 4.0 * c2)));
}

constexpr int vincenty_max_iterations = 200;
constexpr double vincenty_tolerance = 1e-12;

double spheroid_inverse(const Spheroid& sph, const Point& p, const Point& q) {
    const double a = sph.equatorial_radius;
    const double b = sph.polar_radius;
    const double f = sph.flattening();

    const double lon_diff = wrap_longitude(q.longitude() - p.longitude());
    const double u1 = std::atan2((1.0 - f) * std::sin(p.latitude()), std::cos(p.latitude()));
    const double u2 = std::atan2((1.0 - f) * std::sin(q.latitude()), std::cos(q.latitude()));
    const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
    const double sin_u2 = std::sin(u2), cos_u2 = std::cos(u2);

    double lambda = lon_diff;
    double sin_sigma = 0, cos_sigma = 0, sigma = 0, cos2_alpha = 0, cos_2sm = 0;
    for (int iter = 0;; ++iter) {
        if (iter >= vincenty_max_iterations)
            throw Error(ErrorKind::SpheroidNonConvergence, "inverse geodesic did not converge");
        const double sin_l = std::sin(lambda), cos_l = std::cos(lambda);
        const double t1 = cos_u2 * sin_l;
        const double t2 = cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_l;
        sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
        if (sin_sigma == 0.0) {
            cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_l;
            if (cos_sigma > 0.0) return 0.0;
            throw Error(ErrorKind::SpheroidNonConvergence, "antipodal points");
        }
        cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_l;
        sigma = std::atan2(sin_sigma, cos_sigma);
        const double sin_alpha = cos_u1 * cos_u2 * sin_l / sin_sigma;
        cos2_alpha = 1.0 - sin_alpha * sin_alpha;
        cos_2sm = cos2_alpha != 0.0 ? cos_sigma - 2.0 * sin_u1 * sin_u2 / cos2_alpha : 0.0;
        const double c = f / 16.0 * cos2_alpha * (4.0 + f * (4.0 - 3.0 * cos2_alpha));
        const double next =
            lon_diff + (1.0 - c) * f * sin_alpha *
                           (sigma + c * sin_sigma *
                                        (cos_2sm + c * cos_sigma * (-1.0 + 2.0 * cos_2sm * cos_2sm)));
        if (!std::isfinite(next) || std::abs(next) > pi)
            throw Error(ErrorKind::SpheroidNonConvergence, "inverse geodesic diverged");
        const bool done = std::abs(next - lambda) <= vincenty_tolerance;
        lambda = next;
        if (done) break;
    }
    const auto [a_coef, b_coef] = series(cos2_alpha, a, b);
    return b * a_coef * (sigma - delta_sigma(b_coef, sin_sigma, cos_sigma, cos_2sm));
}

Point spheroid_direct(const Spheroid& sph, const Point& p, double azimuth, double s) {
    const double a = sph.equatorial_radius;
    const double b = sph.polar_radius;
    const double f = sph.flattening();

    const double u1 = std::atan2((1.0 - f) * std::sin(p.latitude()), std::cos(p.latitude()));
    const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
    const double sin_a1 = std::sin(azimuth), cos_a1 = std::cos(azimuth);
    const double sigma1 = std::atan2(sin_u1, cos_u1 * cos_a1);
    const double sin_alpha = cos_u1 * sin_a1;
    const double cos2_alpha = 1.0 - sin_alpha * sin_alpha;
    const auto [a_coef, b_coef] = series(cos2_alpha, a, b);

    const double sigma0 = s / (b * a_coef);
    double sigma = sigma0;
    double sin_sigma = 0, cos_sigma = 0, cos_2sm = 0;
    for (int iter = 0;; ++iter) {
        if (iter >= vincenty_max_iterations)
            throw Error(ErrorKind::SpheroidNonConvergence, "direct geodesic did not converge");
        cos_2sm = std::cos(2.0 * sigma1 + sigma);
        sin_sigma = std::sin(sigma);
        cos_sigma = std::cos(sigma);
        const double next = sigma0 + delta_sigma(b_coef, sin_sigma, cos_sigma, cos_2sm);
        const bool done = std::abs(next - sigma) <= vincenty_tolerance;
        sigma = next;
        if (done) break;
    }
    cos_2sm = std::cos(2.0 * sigma1 + sigma);
    sin_sigma = std::sin(sigma);
    cos_sigma = std::cos(sigma);

    const double tmp = sin_u1 * sin_sigma - cos_u1 * cos_sigma * cos_a1;
    const double lat = std::atan2(sin_u1 * cos_sigma + cos_u1 * sin_sigma * cos_a1,
                                  (1.0 - f) * std::sqrt(sin_alpha * sin_alpha + tmp * tmp));
    const double lambda =
        std::atan2(sin_sigma * sin_a1, cos_u1 * cos_sigma - sin_u1 * sin_sigma * cos_a1);
    const double c = f / 16.0 * cos2_alpha * (4.0 + f * (4.0 - 3.0 * cos2_alpha));
    const double lon_diff =
        lambda - (1.0 - c) * f * sin_alpha *
                     (sigma + c * sin_sigma *
                                  (cos_2sm + c * cos_sigma * (-1.0 + 2.0 * cos_2sm * cos_2sm)));
    return Point::geographic(lat, wrap_longitude(p.longitude() + lon_diff));
}

Point sphere_direct(const Sphere2& sph, const Point& p, double azimuth, double s) {
    const double r = sph.radius;
    const double px = p.c[0] / r, py = p.c[1] / r, pz = p.c[2] / r;
    // Local east = z x p, north = p x east; at the poles east is fixed to +y.
    double ex = -py, ey = px, ez = 0.0;
    double en = std::hypot(ex, ey);
    if (en < 1e-15) {
        ex = 0.0;
        ey = 1.0;
        en = 1.0;
    }
    ex /= en;
    ey /= en;
    const double nx = py * ez - pz * ey;
    const double ny = pz * ex - px * ez;
    const double nz = px * ey - py * ex;
    const double dx = std::cos(azimuth) * nx + std::sin(azimuth) * ex;
    const double dy = std::cos(azimuth) * ny + std::sin(azimuth) * ey;
    const double dz = std::cos(azimuth) * nz + std::sin(azimuth) * ez;
    const double ang = s / r;
    const double cs = std::cos(ang), sn = std::sin(ang);
    return Point::embedded(r * (cs * px + sn * dx), r * (cs * py + sn * dy), r * (cs * pz + sn * dz));
}

} // namespace

void validate(const Manifold& m) {
    std::visit(overloaded{
                   [](const Sphere2& s) { require_positive(s.radius, "sphere radius"); },
                   [](const Sphere3& s) { require_positive(s.radius, "sphere radius"); },
                   [](const HyperbolicDisk& h) {
                       require_positive(h.curvature_scale, "hyperbolic curvature scale");
                       require_positive(h.disk_radius, "hyperbolic disk radius");
                   },
                   [](const EuclideanDisk& e) { require_positive(e.radius, "disk radius"); },
                   [](const Spheroid& s) {
                       require_positive(s.equatorial_radius, "equatorial radius");
                       require_positive(s.polar_radius, "polar radius");
                       if (s.polar_radius > s.equatorial_radius)
                           throw Error(ErrorKind::InvalidArgument,
                                       "spheroid must be oblate (polar <= equatorial)");
                   },
               },
               m);
}

std::string_view manifold_type_name(const Manifold& m) {
    return std::visit(overloaded{
                          [](const Sphere2&) { return std::string_view("sphere2"); },
                          [](const Sphere3&) { return std::string_view("sphere3"); },
                          [](const HyperbolicDisk&) { return std::string_view("hyperbolic"); },
                          [](const EuclideanDisk&) { return std::string_view("euclidean"); },
                          [](const Spheroid&) { return std::string_view("spheroid"); },
                      },
                      m);
}

bool on_manifold(const Manifold& m, const Point& p) {
    auto norm = [&](int dims) {
        double n2 = 0.0;
        for (int i = 0; i < dims; ++i) n2 += p.c[i] * p.c[i];
        return std::sqrt(n2);
    };
    return std::visit(
        overloaded{
            [&](const Sphere2& s) { return std::abs(norm(3) - s.radius) <= 1e-12 * s.radius; },
            [&](const Sphere3& s) { return std::abs(norm(4) - s.radius) <= 1e-12 * s.radius; },
            [&](const HyperbolicDisk& h) { return p.c[0] >= 0.0 && p.c[0] <= h.disk_radius; },
            [&](const EuclideanDisk& e) {
                return std::hypot(p.c[0], p.c[1]) <= e.radius * (1.0 + 1e-12);
            },
            [&](const Spheroid&) {
                return std::abs(p.latitude()) <= pi / 2 && std::abs(p.longitude()) <= pi;
            },
        },
        m);
}

double manifold_diameter(const Manifold& m) {
    return std::visit(overloaded{
                          [](const Sphere2& s) { return pi * s.radius; },
                          [](const Sphere3& s) { return pi * s.radius; },
                          [](const HyperbolicDisk& h) { return 2.0 * h.disk_radius; },
                          [](const EuclideanDisk& e) { return 2.0 * e.radius; },
                          [](const Spheroid& s) { return pi * s.equatorial_radius; },
                      },
                      m);
}

std::optional<double> sectional_curvature(const Manifold& m) {
    return std::visit(
        overloaded{
            [](const Sphere2& s) -> std::optional<double> { return 1.0 / (s.radius * s.radius); },
            [](const Sphere3& s) -> std::optional<double> { return 1.0 / (s.radius * s.radius); },
            [](const HyperbolicDisk& h) -> std::optional<double> {
                return -1.0 / (h.curvature_scale * h.curvature_scale);
            },
            [](const EuclideanDisk&) -> std::optional<double> { return 0.0; },
            [](const Spheroid&) -> std::optional<double> { return std::nullopt; },
        },
        m);
}

double hyperbolic_disk_radius_for_area(double area, double curvature_scale) {
    require_positive(area, "area");
    require_positive(curvature_scale, "curvature scale");
    const double k2 = curvature_scale * curvature_scale;
    return curvature_scale * std::acosh(1.0 + area / (2.0 * pi * k2));
}

Point sample_point(const Manifold& m, Rng& rng) {
    return std::visit(
        overloaded{
            [&](const Sphere2& s) { return sample_sphere(s.radius, 3, rng); },
            [&](const Sphere3& s) { return sample_sphere(s.radius, 4, rng); },
            [&](const HyperbolicDisk& h) {
                // Inverse CDF of the radial density sinh(r/k) on [0, R].
                const double k = h.curvature_scale;
                const double span = std::cosh(h.disk_radius / k) - 1.0;
                const double r = std::min(h.disk_radius, k * std::acosh(1.0 + rng.uniform() * span));
                const double theta = 2.0 * pi * rng.uniform();
                return Point::polar(r, theta);
            },
            [&](const EuclideanDisk& e) {
                const double r = e.radius * std::sqrt(rng.uniform());
                const double theta = 2.0 * pi * rng.uniform();
                return Point::planar(r * std::cos(theta), r * std::sin(theta));
            },
            [&](const Spheroid& s) {
                // Proposal uniform in sin(lat) (the sphere's area element), accepted
                // against the spheroid's element cos(lat) / (1 - e2 sin^2 lat)^2.
                const double e2 = s.eccentricity_squared();
                const double floor = (1.0 - e2) * (1.0 - e2);
                for (int attempt = 0; attempt < 1'000'000; ++attempt) {
                    const double sin_lat = rng.uniform(-1.0, 1.0);
                    const double lon = rng.uniform(-pi, pi);
                    const double w = 1.0 - e2 * sin_lat * sin_lat;
                    if (rng.uniform() * w * w < floor) return Point::geographic(std::asin(sin_lat), lon);
                }
                throw Error(ErrorKind::InternalError, "spheroid rejection sampling did not terminate");
            },
        },
        m);
}

double geodesic_distance(const Manifold& m, const Point& p, const Point& q) {
    return std::visit(
        overloaded{
            [&](const Sphere2& s) { return s.radius * embedded_angle(p, q, 3); },
            [&](const Sphere3& s) { return s.radius * embedded_angle(p, q, 4); },
            [&](const HyperbolicDisk& h) {
                // cosh(d/k) - 1 written without cancellation, then acosh(1 + x).
                const double k = h.curvature_scale;
                const double half_dr = std::sinh((p.c[0] - q.c[0]) / (2.0 * k));
                const double half_dt = std::sin((p.c[1] - q.c[1]) / 2.0);
                const double x = 2.0 * half_dr * half_dr +
                                 2.0 * half_dt * half_dt * (std::sinh(p.c[0] / k) * std::sinh(q.c[0] / k));
                const double xc = std::max(0.0, x);
                return k * std::log1p(xc + std::sqrt(xc * (xc + 2.0)));
            },
            [&](const EuclideanDisk&) { return std::hypot(p.c[0] - q.c[0], p.c[1] - q.c[1]); },
            [&](const Spheroid& s) {
                // The iteration is not bit-symmetric; fix an argument order.
                return p.c < q.c ? spheroid_inverse(s, p, q) : spheroid_inverse(s, q, p);
            },
        },
        m);
}

Point geodesic_direct(const Manifold& m, const Point& p, double azimuth, double s) {
    if (s < 0.0) throw Error(ErrorKind::InvalidArgument, "arclength must be non-negative");
    if (const auto* sph = std::get_if<Sphere2>(&m)) return sphere_direct(*sph, p, azimuth, s);
    if (const auto* sph = std::get_if<Spheroid>(&m)) return spheroid_direct(*sph, p, azimuth, s);
    throw Error(ErrorKind::UnsupportedManifold,
                "direct geodesic problem is only available on sphere2 and spheroid");
}

} // namespace dsc
