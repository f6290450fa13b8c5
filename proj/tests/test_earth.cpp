#include <doctest.h>

#include <cmath>
#include <vector>

#include "dsc/error.hpp"
#include "dsc/earth.hpp"

using namespace dsc;

TEST_CASE("sphere triangles obey the spherical Pythagorean theorem") {
    const Spheroid sphere{6371.0, 6371.0};
    const double r = 6371.0;
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const double la = rng.uniform(100.0, 4000.0), lb = rng.uniform(100.0, 4000.0);
        const auto t = sample_spheroid_triangle(sphere, la, lb, rng);
        CHECK(t.a == la);
        CHECK(t.b == lb);
        const double lhs = std::cos(t.c / r), rhs = std::cos(la / r) * std::cos(lb / r);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs));
    }
}

TEST_CASE("1000 km legs on the earth spheroid") {
    // Spherical hypotenuses at the ends of the curvature-radius band bracket c.
    const auto spherical = [](double r) { return r * std::acos(std::pow(std::cos(1000.0 / r), 2)); };
    const double lo = spherical(6357.0 - 5.0), hi = spherical(expected_radius_max + 5.0);
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const auto t = sample_spheroid_triangle(Spheroid{}, 1000.0, 1000.0, rng);
        CHECK(t.c > lo);
        CHECK(t.c < hi);
        CHECK(t.c < 1000.0 * std::sqrt(2.0));
    }
}

TEST_CASE("fixed seed gives the same triangle") {
    Rng a(3), b(3);
    CHECK(sample_spheroid_triangle(Spheroid{}, 800.0, 1200.0, a).c ==
          sample_spheroid_triangle(Spheroid{}, 800.0, 1200.0, b).c);
}

TEST_CASE("radius from curvature") {
    CHECK(radius_from_curvature(1.0 / (6371.0 * 6371.0)) == doctest::Approx(6371.0));
    CHECK(radius_from_curvature(4.0) == 0.5);
    CHECK_THROWS_AS(radius_from_curvature(0.0), Error);
    CHECK_THROWS_AS(radius_from_curvature(-1.0), Error);
}

TEST_CASE("expected radius density") {
    CHECK(expected_radius_pdf(6358.0) == doctest::Approx(0.077088));
    CHECK(expected_radius_pdf(6356.0) == 0.0);
    CHECK(expected_radius_pdf(6400.0) == 0.0);
    CHECK(expected_radius_cdf(6356.0) == 0.0);
    CHECK(expected_radius_cdf(6500.0) == 1.0);

    // Midpoint quadrature in u = sqrt(R - 6357), where the density is smooth.
    const double top = std::sqrt(expected_radius_max - expected_radius_min);
    const int steps = 200000;
    double mass = 0.0, first = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double u = (i + 0.5) * top / steps;
        const double r = expected_radius_min + u * u;
        const double w = expected_radius_pdf(r) * 2 * u * top / steps;
        mass += w;
        first += r * w;
        if (i % 5000 == 0) CHECK(std::abs(expected_radius_cdf(r) - 2 * 0.077088 * u) < 1e-9);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
    // The quoted 6371.07 km carries a 0.05 km rounding slip; the integral is 6371.02.
    CHECK(std::abs(first / mass - 6371.07) < 0.1);
}

TEST_CASE("Kolmogorov-Smirnov distance") {
    const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
    const std::vector<double> one = {0.5};
    CHECK(ks_distance(one, uniform) == doctest::Approx(0.5));
    const std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    CHECK(ks_distance(grid, uniform) == doctest::Approx(0.1));
}

TEST_CASE("estimate_earth_radius") {
    SUBCASE("a sphere returns its radius") {
        EarthOptions opts;
        opts.samples = 300;
        opts.seed = 4;
        const auto r = estimate_earth_radius(Spheroid{6371.0, 6371.0}, opts);
        CHECK(r.radii.size() == 300);
        for (double x : r.radii) CHECK(std::abs(x - 6371.0) <= 1e-4 * 6371.0);
    }
    SUBCASE("earth radii stay within the curvature-radius band") {
        EarthOptions opts;
        opts.samples = 2000;
        opts.max_length = 6400.0;
        opts.seed = 5;
        const auto r = estimate_earth_radius(Spheroid{}, opts);
        CHECK(r.requested == 2000);
        for (double x : r.radii) {
            CHECK(x >= 6357.0 - 5.0);
            CHECK(x <= expected_radius_max + 5.0);
        }
        CHECK(r.stats.mean == doctest::Approx(6371.0).epsilon(5e-4));
    }
    SUBCASE("thread count does not change the radii") {
        EarthOptions opts;
        opts.samples = 200;
        opts.seed = 6;
        opts.threads = 1;
        const auto a = estimate_earth_radius(Spheroid{}, opts);
        opts.threads = 3;
        CHECK(a.radii == estimate_earth_radius(Spheroid{}, opts).radii);
    }
    SUBCASE("a tight length cap rejects everything") {
        EarthOptions opts;
        opts.samples = 100;
        opts.max_length = 100.0;
        CHECK_THROWS_AS(estimate_earth_radius(Spheroid{}, opts), Error);
    }
    SUBCASE("bad leg range") {
        EarthOptions opts;
        opts.leg_min = 0.0;
        CHECK_THROWS_AS(estimate_earth_radius(Spheroid{}, opts), Error);
    }
}
