#pragma once

#include <cstddef>
#include <span>

namespace dsc {

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double std_dev = 0.0;         // sample standard deviation (N - 1)
    double standard_error = 0.0;  // std_dev / sqrt(N)
    double trimmed_mean = 0.0;    // 5% cut from each tail
    double median = 0.0;
};

/// Throws EmptyInput for an empty span.
SummaryStats summarize(std::span<const double> values, double trim_fraction = 0.05);

double mean(std::span<const double> values);
double median(std::span<const double> values);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool degenerate = false;  // ys constant: r_squared reported as 0
};

/// Ordinary least squares y = slope x + intercept. Throws DegenerateFit with
/// fewer than two distinct x values.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

} // namespace dsc
