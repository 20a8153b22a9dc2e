#pragma once

#include "mssc/core.hpp"

namespace mssc {

/// Chunk-level centroids pooled across the dataset. Chunk i always derives
/// its RNG from (seed, i), so the pool is a pure function of (X, k, p, seed)
/// no matter which order the chunks execute in; `execution_order` exists to
/// exercise that. Centroids of clusters that ended empty within their chunk
/// are dropped and flagged.
struct ChunkPool {
    Dataset pool;
    std::size_t chunk_count = 0;
    bool dropped_any = false;
};

ChunkPool build_chunk_pool(const Dataset& X, std::size_t k, std::size_t p, std::uint64_t seed,
                           DistanceCounter& counter,
                           const std::vector<std::size_t>* execution_order = nullptr);

/// One global shuffle, contiguous chunks of size p, Forgy-seeded Lloyd per
/// chunk, then a K-means++-seeded Lloyd over the pooled chunk centroids and a
/// final assignment of X to the k winners.
ClusteringResult run_bdcsm(const Dataset& X, std::size_t k, std::size_t p, std::uint64_t seed,
                           DistanceCounter& counter);

}  // namespace mssc
