#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsc/manifold.hpp"
#include "dsc/stats.hpp"

namespace dsc {

struct SweepOptions {
    std::vector<std::size_t> vertex_counts;
    std::size_t seeds_per_count = 1;
    std::size_t samples_per_graph = 1000;
    double tolerance = 0.25;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

/// One (vertex count, seed) graph of a sweep.
struct SweepJob {
    std::size_t vertex_count = 0;
    std::size_t seed_index = 0;
    std::optional<std::string> failure;  // "<ErrorKind>: message" when the job failed
    double distortion = 0.0;
    double effective_edge_length = 0.0;
    std::vector<double> curvatures;
};

struct ConvergencePoint {
    std::size_t vertex_count = 0;
    double mean_distortion = 0.0;
    double mean_absolute_error = 0.0;    // mean |K - trueK| over pooled samples
    double absolute_error_of_mean = 0.0;  // |mean K - trueK| over pooled samples
    double mean_edge_length_sq = 0.0;     // for errors in units of l_e^-2
    std::size_t seeds_used = 0;
    std::size_t sample_count = 0;
};

struct SweepReport {
    std::vector<SweepJob> jobs;             // count-major, then seed
    std::vector<ConvergencePoint> points;   // counts with at least one successful job
    std::optional<LinearFit> mae_fit;       // against mean distortion
    std::optional<LinearFit> aem_fit;
};

/// Job j (count-major order) uses sub-stream (seed, j) for sprinkling,
/// distortion sources and hop window, and a seed drawn from it for the
/// curvature samples. Failed jobs are recorded and skipped. Fits are absent
/// with fewer than two points of distinct distortion.
SweepReport run_sweep(const Manifold& m, double true_curvature, const SweepOptions& options);

} // namespace dsc
