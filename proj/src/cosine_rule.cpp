#include "dsc/cosine_rule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsc/error.hpp"

namespace dsc {

namespace {

// 1 - cos(x sqrt K) for either sign of K, accurate for small |K| x^2.
double versine(double x, double curvature) {
    if (curvature > 0.0) {
        const double h = std::sin(0.5 * x * std::sqrt(curvature));
        return 2.0 * h * h;
    }
    if (curvature < 0.0) {
        const double h = std::sinh(0.5 * x * std::sqrt(-curvature));
        return -2.0 * h * h;
    }
    return 0.0;
}

// cos(c s) - cos(a s) cos(b s) = A + B - C - AB with A = 1 - cos(a s), ...
double residual(double a, double b, double c, double curvature) {
    const double va = versine(a, curvature);
    const double vb = versine(b, curvature);
    const double vc = versine(c, curvature);
    return va + vb - vc - va * vb;
}

// Has the sign of cosh(c t) - cosh(a t) cosh(b t) for any t > 0 without overflow.
double negative_branch_sign_value(double a, double b, double c, double t) {
    if ((a + b) * t <= 20.0) return residual(a, b, c, -t * t);
    // Everything scaled by exp(-(a + b) t).
    const double lhs = 0.5 * (std::exp((c - a - b) * t) + std::exp(-(c + a + b) * t));
    const double rhs = 0.25 * (1.0 + std::exp(-2.0 * a * t)) * (1.0 + std::exp(-2.0 * b * t));
    return lhs - rhs;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

constexpr int positive_scan_intervals = 256;
constexpr int negative_scan_doublings = 60;
constexpr int max_bisections = 300;
constexpr double bisection_rel_tol = 1e-14;

template <typename SignFn>
double bisect(double lo, double hi, int sign_lo, SignFn&& sign_at) {
    for (int it = 0; it < max_bisections && hi - lo > bisection_rel_tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const int s = sign_at(mid);
        if (s == 0) return mid;
        if (s == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double cosine_rule_residual(double a, double b, double c, double curvature) {
    return residual(a, b, c, curvature);
}

CurvatureRoot solve_curvature(double a, double b, double c) {
    const bool finite = std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
    if (!finite || !(a > 0.0 && b > 0.0 && c > 0.0) || !(a < b + c && b < a + c && c < a + b))
        throw Error(ErrorKind::TriangleInequalityViolated, "sides violate the strict triangle inequality");

    const double excess = a * a + b * b - c * c;
    if (std::abs(excess) <= 1e-12 * c * c) return {0.0, 0};

    const double longest = std::max({a, b, c});
    CurvatureRoot root;

    if (excess > 0.0) {
        // The deflated residual f(K)/K starts at excess/2 > 0 as K -> 0+.
        const double k_max = std::numbers::pi * std::numbers::pi / (longest * longest);
        auto sign_at = [&](double k) { return sign(residual(a, b, c, k) / k); };
        double prev_k = 0.0;
        int prev_sign = 1;
        bool found = false;
        for (int i = 1; i <= positive_scan_intervals; ++i) {
            const double k = k_max * static_cast<double>(i) / positive_scan_intervals;
            const int s = sign_at(k);
            if (s != prev_sign) {
                ++root.sign_changes;
                if (!found) {
                    root.curvature = s == 0 ? k : bisect(prev_k, k, prev_sign, sign_at);
                    found = true;
                }
            }
            if (s != 0) prev_sign = s;
            prev_k = k;
        }
        if (!found) throw Error(ErrorKind::RootNotFound, "no positive root in range");
        return root;
    }

    // Negative branch in t = sqrt(-K): cosh(c t) - cosh(a t) cosh(b t) starts
    // positive and turns negative once (a + b) t dominates c t.
    auto sign_at = [&](double t) { return sign(negative_branch_sign_value(a, b, c, t)); };
    const double t0 = 1e-3 / longest;
    double prev_t = 0.0;
    int prev_sign = 1;
    bool found = false;
    double t_root = 0.0;
    for (int i = 0; i <= negative_scan_doublings; ++i) {
        const double t = std::ldexp(t0, i);
        const int s = sign_at(t);
        if (s != prev_sign) {
            ++root.sign_changes;
            if (!found) {
                t_root = s == 0 ? t : bisect(prev_t, t, prev_sign, sign_at);
                found = true;
            }
        }
        if (s != 0) prev_sign = s;
        prev_t = t;
    }
    if (!found) throw Error(ErrorKind::RootNotFound, "no negative root located");
    root.curvature = -t_root * t_root;
    return root;
}

} // namespace dsc
