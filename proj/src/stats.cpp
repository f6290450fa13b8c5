#include "dsc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dsc/error.hpp"

namespace dsc {

double mean(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "mean of empty sample");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "median of empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

SummaryStats summarize(std::span<const double> values, double trim_fraction) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "no samples to summarize");
    SummaryStats s;
    s.count = values.size();
    s.mean = mean(values);

    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const auto n = static_cast<double>(s.count);
    s.std_dev = s.count > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    s.standard_error = s.std_dev / std::sqrt(n);

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.median = s.count % 2 == 1 ? sorted[s.count / 2]
                                : 0.5 * (sorted[s.count / 2 - 1] + sorted[s.count / 2]);
    const auto cut = static_cast<std::size_t>(std::floor(trim_fraction * n));
    double trimmed = 0.0;
    for (std::size_t i = cut; i < s.count - cut; ++i) trimmed += sorted[i];
    s.trimmed_mean = trimmed / static_cast<double>(s.count - 2 * cut);
    return s;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw Error(ErrorKind::InvalidArgument, "xs and ys differ in length");
    if (xs.empty() || std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs[0]; }))
        throw Error(ErrorKind::DegenerateFit, "need at least two distinct x values");
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.degenerate = true;
        return fit;
    }
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
    return fit;
}

} // namespace dsc
