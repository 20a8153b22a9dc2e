#pragma once

#include <limits>

#include "mssc/core.hpp"
#include "mssc/lloyd.hpp"

namespace mssc {

enum class BigMeansMode { Competitive, Collective, Hybrid };

struct BigMeansConfig {
    std::size_t s = 0;             ///< sample size per iteration, 1 <= s <= m
    std::size_t max_samples = 0;   ///< total sample budget across workers; 0 = unbounded
    double time_limit_seconds = 0; ///< wall budget; 0 = unbounded
    std::size_t workers = 1;
    BigMeansMode mode = BigMeansMode::Competitive;
    double hybrid_switch_fraction = 0.5;
};

/// Keep-the-best state. `initialized` is false until the first sample has been
/// clustered; best_f is the objective on the sample that produced the
/// centroids and only ever decreases.
struct Incumbent {
    Centroids centroids{0, 0};
    bool initialized = false;
    double best_f = std::numeric_limits<double>::infinity();
    double updated_at_seconds = 0.0;
};

/// Publish-on-strict-improvement: adopts (C, f) only when f < inc.best_f.
/// Returns whether the incumbent changed.
bool incumbent_publish(Incumbent& inc, const Centroids& C, double f, double now_seconds);

struct BigMeansResult {
    ClusteringResult result;
    /// Global best sample objective after each improvement, in publish order.
    std::vector<double> incumbent_history;
    std::size_t samples_drawn = 0;
};

/// Iterative uniform sampling with K-means++ reseeding of clusters that come
/// up empty on the current sample, Lloyd refinement from the incumbent, and
/// acceptance iff the new sample objective beats the incumbent's. Worker w
/// uses an RNG derived from (seed, w); the total sample budget is dealt out
/// round-robin, so fixed (seed, workers, mode) reproduces the result exactly.
/// result.elapsed_seconds is the time of the last incumbent improvement.
BigMeansResult run_big_means(const Dataset& X, std::size_t k, const BigMeansConfig& cfg,
                             std::uint64_t seed, DistanceCounter& counter);

}  // namespace mssc
