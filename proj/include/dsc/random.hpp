#pragma once

#include <cstdint>
#include <limits>

namespace dsc {

/// xoshiro256** generator with explicit, platform-independent distributions.
///
/// Every stochastic routine in the library draws from an Rng it is handed.
/// Parallel routines derive one sub-stream per work item with
/// `Rng::stream(seed, index)`, so results never depend on the worker count.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0);

    /// Independent sub-stream `index` of master seed `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased uniform integer in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n);

    /// Standard normal deviate (Marsaglia polar method).
    double normal();

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

} // namespace dsc
