#pragma once

#include <random>

#include "mssc/core.hpp"
#include "mssc/lloyd.hpp"

namespace mssc {

struct SeedConfig {
    enum class Method { UniformHull, Forgy, KMeansPP };
    Method method = Method::KMeansPP;
    int n_candidates = 3;
    std::uint64_t rng_seed = 0;
};

/// k distinct rows of X chosen uniformly without replacement.
Centroids forgy_seed(const Dataset& X, std::size_t k, std::mt19937_64& rng);

/// Per-coordinate uniform draws within the bounding box of X.
Centroids bounding_box_seed(const Dataset& X, std::size_t k, std::mt19937_64& rng);

/// D^2 seeding with greedy candidate selection: each new center is drawn with
/// probability proportional to the squared distance to the nearest chosen
/// center; with n_candidates > 1 the candidate minimizing the resulting total
/// cost wins. duplicate_fallback fires when the potential collapses to zero
/// (all remaining points coincide with chosen centers) and the rest are filled
/// Forgy-style.
struct SeedOutcome {
    Centroids centroids;
    bool duplicate_fallback = false;
};
SeedOutcome kmeans_pp_seed(const Dataset& X, std::size_t k, std::mt19937_64& rng,
                           int n_candidates, DistanceCounter& counter);

/// Extend an existing center set by n_new D^2-sampled rows of X. Used by the
/// sample-reseeding algorithms; returns indices into X.
std::vector<std::size_t> kmeans_pp_extend(const Dataset& X, const Centroids& existing,
                                          std::size_t n_new, std::mt19937_64& rng,
                                          int n_candidates, DistanceCounter& counter,
                                          bool* duplicate_fallback = nullptr);

/// Best of `restarts` independent Forgy-seeded Lloyd runs. Restart r derives
/// its RNG from (seed, r); n_d aggregates across all restarts.
ClusteringResult multi_start(const Dataset& X, std::size_t k, std::size_t restarts,
                             std::uint64_t seed, const StopRule& stop, DistanceCounter& counter);

}  // namespace mssc
