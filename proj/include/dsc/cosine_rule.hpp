#pragma once

namespace dsc {

/// Residual of the right-angle generalized cosine rule,
/// f(K) = cos(c sqrt K) - cos(a sqrt K) cos(b sqrt K), with cos(s sqrt K) read
/// as cosh(s sqrt(-K)) for K < 0. Evaluated without cancellation near K = 0.
double cosine_rule_residual(double a, double b, double c, double curvature);

struct CurvatureRoot {
    double curvature = 0.0;
    /// Sign changes seen while scanning the branch that holds the root.
    /// More than one means the input admits several in-range roots; the one
    /// nearest zero is returned.
    int sign_changes = 0;
};

/// Solves the rule for the unique non-trivial root K <= pi^2 / max(a,b,c)^2
/// of a right triangle with legs a, b and hypotenuse c. Returns exactly 0
/// when a^2 + b^2 = c^2 to 1e-12 relative.
///
/// Throws TriangleInequalityViolated (also for degenerate equality) and
/// RootNotFound.
CurvatureRoot solve_curvature(double a, double b, double c);

inline double curvature_from_triangle(double a, double b, double c) {
    return solve_curvature(a, b, c).curvature;
}

} // namespace dsc
