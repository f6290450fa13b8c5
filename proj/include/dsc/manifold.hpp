#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <variant>

#include "dsc/random.hpp"

namespace dsc {

struct Sphere2 {
    double radius = 1.0;
};

struct Sphere3 {
    double radius = 1.0;
};

/// Disk of hyperbolic radius `disk_radius` in the hyperbolic plane of
/// sectional curvature -1/curvature_scale^2.
struct HyperbolicDisk {
    double curvature_scale = 1.0;
    double disk_radius = 1.0;
};

struct EuclideanDisk {
    double radius = 1.0;
};

/// Oblate ellipsoid of revolution; lengths in kilometres by convention.
struct Spheroid {
    double equatorial_radius = 6378.0;
    double polar_radius = 6357.0;

    double flattening() const { return (equatorial_radius - polar_radius) / equatorial_radius; }
    double eccentricity_squared() const {
        const double f = flattening();
        return f * (2.0 - f);
    }
};

using Manifold = std::variant<Sphere2, Sphere3, HyperbolicDisk, EuclideanDisk, Spheroid>;

/// Chart coordinates of a point. The meaning of the slots depends on the
/// manifold:
///   Sphere2/Sphere3   embedding vector (x, y, z[, w]) of norm `radius`
///   HyperbolicDisk    (r, theta) hyperbolic polar coordinates
///   EuclideanDisk     (x, y)
///   Spheroid          (latitude, longitude) in radians, geodetic latitude
struct Point {
    std::array<double, 4> c{};

    static Point embedded(double x, double y, double z, double w = 0.0) { return {{x, y, z, w}}; }
    static Point polar(double r, double theta) { return {{r, theta, 0.0, 0.0}}; }
    static Point planar(double x, double y) { return {{x, y, 0.0, 0.0}}; }
    static Point geographic(double latitude, double longitude) {
        return {{latitude, longitude, 0.0, 0.0}};
    }

    double latitude() const { return c[0]; }
    double longitude() const { return c[1]; }

    friend bool operator==(const Point&, const Point&) = default;
};

/// Throws InvalidArgument if any length is non-positive or the spheroid is prolate.
void validate(const Manifold& m);

std::string_view manifold_type_name(const Manifold& m);

/// True when p satisfies the chart invariants of m (norm, radial range, latitude range).
bool on_manifold(const Manifold& m, const Point& p);

/// Largest geodesic distance between two points of m (spheroid: half the
/// equatorial circumference, an upper bound).
double manifold_diameter(const Manifold& m);

/// Constant sectional curvature of m, or nullopt for the spheroid.
std::optional<double> sectional_curvature(const Manifold& m);

/// Radius of the hyperbolic disk with the given area, 2*pi*k^2*(cosh(R/k) - 1) = area.
double hyperbolic_disk_radius_for_area(double area, double curvature_scale = 1.0);

/// Point distributed uniformly with respect to the Riemannian volume of m.
Point sample_point(const Manifold& m, Rng& rng);

/// Exact geodesic distance. Throws SpheroidNonConvergence for spheroid pairs
/// where the inverse iteration fails (near-antipodal points).
double geodesic_distance(const Manifold& m, const Point& p, const Point& q);

/// Endpoint of the geodesic leaving p with the given azimuth (clockwise from
/// north, radians) after arclength s. Sphere2 and Spheroid only.
Point geodesic_direct(const Manifold& m, const Point& p, double azimuth, double s);

} // namespace dsc
