#pragma once

#include <random>

#include "mssc/core.hpp"

namespace mssc {

/// Lightweight coreset draw: s exact rows of X sampled without replacement
/// with probability q(x) = 1/(2m) + ||x - mu||^2 / (2 D), D = sum of squared
/// distances to the mean. Construction is exactly two passes over X (mean,
/// then D and q) plus the draws. `uniform_fallback` fires when all points
/// coincide (D = 0) and q degenerates to 1/m.
struct CoresetSample {
    Dataset points;
    std::vector<std::size_t> indices;       ///< source rows in X, draw order
    std::vector<double> probabilities;      ///< q of each drawn point
    bool uniform_fallback = false;
};

CoresetSample build_lightweight_coreset(const Dataset& X, std::size_t s, std::mt19937_64& rng,
                                        DistanceCounter& counter);

/// All q values for X, in row order (sums to 1). Exposed for auditing the
/// sampling distribution.
std::vector<double> lightweight_coreset_probabilities(const Dataset& X, DistanceCounter& counter,
                                                      bool* uniform_fallback = nullptr);

/// K-means++-seeded Lloyd on the (unweighted) coreset, then every point of X
/// assigned to the resulting centroids; the reported objective is the
/// full-dataset one.
ClusteringResult run_lw_coreset(const Dataset& X, std::size_t k, std::size_t s,
                                std::mt19937_64& rng, DistanceCounter& counter);

}  // namespace mssc
