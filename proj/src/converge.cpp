#include "dsc/converge.hpp"

#include <cmath>

#include "dsc/curvature.hpp"
#include "dsc/distortion.hpp"
#include "dsc/error.hpp"
#include "dsc/parallel.hpp"
#include "dsc/sprinkle.hpp"

namespace dsc {

namespace {

void run_job(const Manifold& m, const SweepOptions& options, std::size_t index, SweepJob& job) {
    Rng rng = Rng::stream(options.seed, index);
    try {
        const auto gg = sprinkle(m, job.vertex_count, options.tolerance, rng, std::nullopt, 1);
        const auto sources = default_distortion_sources(job.vertex_count, rng);
        const auto dist = measure_distortion(gg, sources, 1);
        job.distortion = dist.distortion;
        job.effective_edge_length = dist.effective_edge_length;
        CurvatureOptions co;
        co.samples = options.samples_per_graph;
        co.window = default_hop_window(gg.graph, rng);
        co.seed = rng();
        co.threads = 1;
        job.curvatures = estimate_curvature(gg.graph, dist.effective_edge_length, co).samples;
    } catch (const Error& e) {
        job.failure = std::string(error_kind_name(e.kind())) + ": " + e.what();
        job.curvatures.clear();
    }
}

} // namespace

SweepReport run_sweep(const Manifold& m, double true_curvature, const SweepOptions& options) {
    validate(m);
    if (options.vertex_counts.empty() || options.seeds_per_count == 0 || options.samples_per_graph == 0)
        throw Error(ErrorKind::InvalidArgument, "sweep needs counts, seeds and samples");

    SweepReport report;
    for (std::size_t count : options.vertex_counts)
        for (std::size_t s = 0; s < options.seeds_per_count; ++s) {
            SweepJob job;
            job.vertex_count = count;
            job.seed_index = s;
            report.jobs.push_back(job);
        }
    parallel_for(report.jobs.size(), options.threads,
                 [&](std::size_t j) { run_job(m, options, j, report.jobs[j]); });

    for (std::size_t c = 0; c < options.vertex_counts.size(); ++c) {
        ConvergencePoint p;
        p.vertex_count = options.vertex_counts[c];
        double distortion = 0.0, edge_sq = 0.0, sum = 0.0, abs_sum = 0.0;
        for (std::size_t s = 0; s < options.seeds_per_count; ++s) {
            const auto& job = report.jobs[c * options.seeds_per_count + s];
            if (job.failure) continue;
            ++p.seeds_used;
            distortion += job.distortion;
            edge_sq += job.effective_edge_length * job.effective_edge_length;
            for (double k : job.curvatures) {
                sum += k;
                abs_sum += std::abs(k - true_curvature);
            }
            p.sample_count += job.curvatures.size();
        }
        if (p.seeds_used == 0) continue;
        const auto seeds = static_cast<double>(p.seeds_used);
        const auto n = static_cast<double>(p.sample_count);
        p.mean_distortion = distortion / seeds;
        p.mean_edge_length_sq = edge_sq / seeds;
        p.mean_absolute_error = abs_sum / n;
        p.absolute_error_of_mean = std::abs(sum / n - true_curvature);
        report.points.push_back(p);
    }

    std::vector<double> xs, mae, aem;
    for (const auto& p : report.points) {
        xs.push_back(p.mean_distortion);
        mae.push_back(p.mean_absolute_error);
        aem.push_back(p.absolute_error_of_mean);
    }
    try {
        report.mae_fit = linear_fit(xs, mae);
        report.aem_fit = linear_fit(xs, aem);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateFit) throw;
    }
    return report;
}

} // namespace dsc
