#pragma once

#include <functional>
#include <random>

#include "mssc/core.hpp"

namespace mssc {

/// Mini-batch k-means: T fixed iterations, each drawing a uniform batch
/// without replacement and folding it into the running per-cluster means with
/// count weighting: c <- (c * n_c + sum(batch members)) / (n_c + b_c).
/// The reported assignment and objective come from one final full pass.
ClusteringResult run_minibatch(const Dataset& X, const Centroids& C0, std::size_t batch_size,
                               std::size_t iterations, std::mt19937_64& rng,
                               DistanceCounter& counter);

/// Sequential (streaming) k-means state: per-cluster running means with
/// counts seeded at 1, so the initial centroids act as their own first
/// observations.
struct OnlineState {
    Centroids centroids;
    std::vector<std::uint64_t> counts;
};

OnlineState online_init(const Centroids& C0);

/// Fold one point into its nearest running mean: c <- (c * n + x) / (n + 1).
/// Returns the index of the cluster the point joined.
std::uint32_t online_update(OnlineState& state, const double* x, std::size_t n,
                            DistanceCounter& counter);

/// Stream the rows of X in order through online_update, seeding the state
/// from the first k rows. The reported assignment and objective come from one
/// final full pass against the resulting means.
ClusteringResult run_online(const Dataset& X, std::size_t k, DistanceCounter& counter);

/// Same single-pass update over an external point source: `next` fills a
/// buffer of length state.centroids.n and returns false when exhausted.
void drain_stream(OnlineState& state, const std::function<bool(std::vector<double>&)>& next,
                  DistanceCounter& counter);

}  // namespace mssc
