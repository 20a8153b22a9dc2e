#include "mssc/bdcsm.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "mssc/init.hpp"
#include "mssc/rng.hpp"

namespace mssc {

namespace {

struct ChunkOutput {
    std::vector<double> centroids;  // surviving centroids, row-major
    std::size_t rows = 0;
    bool dropped = false;
};

ChunkOutput cluster_chunk(const Dataset& chunk, std::size_t k, std::uint64_t chunk_seed,
                          DistanceCounter& counter) {
    ChunkOutput out;
    const std::size_t k_eff = std::min(k, chunk.m);
    out.dropped = k_eff < k;
    std::mt19937_64 rng = make_rng(chunk_seed);
    Centroids C0 = forgy_seed(chunk, k_eff, rng);
    LloydResult refined = run_lloyd(chunk, C0, StopRule{}, EmptyPolicy::KeepPrevious, counter);
    std::vector<std::size_t> counts(k_eff, 0);
    for (std::uint32_t a : refined.result.assignment.labels) ++counts[a];
    for (std::size_t j = 0; j < k_eff; ++j) {
        if (counts[j] == 0) {
            out.dropped = true;
            continue;
        }
        const double* c = refined.result.centroids.values.data() + j * chunk.n;
        out.centroids.insert(out.centroids.end(), c, c + chunk.n);
        ++out.rows;
    }
    return out;
}

}  // namespace

ChunkPool build_chunk_pool(const Dataset& X, std::size_t k, std::size_t p, std::uint64_t seed,
                           DistanceCounter& counter,
                           const std::vector<std::size_t>* execution_order) {
    if (p < k) throw std::invalid_argument("build_chunk_pool: chunk size below k");
    if (X.m < k) throw std::invalid_argument("build_chunk_pool: fewer points than clusters");

    std::vector<std::size_t> order(X.m);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 shuffle_rng = make_rng(seed);
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    const std::size_t chunks = (X.m + p - 1) / p;
    std::vector<std::size_t> schedule(chunks);
    std::iota(schedule.begin(), schedule.end(), 0);
    if (execution_order) {
        if (execution_order->size() != chunks)
            throw std::invalid_argument("build_chunk_pool: bad execution order");
        schedule = *execution_order;
    }

    std::vector<ChunkOutput> outputs(chunks);
    for (std::size_t c : schedule) {
        const std::size_t lo = c * p;
        const std::size_t hi = std::min(lo + p, X.m);
        Dataset chunk;
        chunk.m = hi - lo;
        chunk.n = X.n;
        chunk.values.resize(chunk.m * X.n);
        for (std::size_t i = lo; i < hi; ++i) {
            const double* src = X.values.data() + order[i] * X.n;
            std::copy(src, src + X.n,
                      chunk.values.begin() + static_cast<std::ptrdiff_t>((i - lo) * X.n));
        }
        outputs[c] = cluster_chunk(chunk, k, derive_seed(seed, c), counter);
    }

    ChunkPool out;
    out.chunk_count = chunks;
    out.pool.n = X.n;
    for (const ChunkOutput& o : outputs) {
        out.dropped_any |= o.dropped;
        out.pool.values.insert(out.pool.values.end(), o.centroids.begin(), o.centroids.end());
        out.pool.m += o.rows;
    }
    return out;
}

ClusteringResult run_bdcsm(const Dataset& X, std::size_t k, std::size_t p, std::uint64_t seed,
                           DistanceCounter& counter) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();

    ChunkPool pooled = build_chunk_pool(X, k, p, seed, counter);
    if (pooled.pool.m < k)
        throw std::runtime_error("run_bdcsm: pooled centroids fewer than k clusters");

    std::mt19937_64 pool_rng = make_rng(derive_seed(seed, pooled.chunk_count));
    SeedOutcome seeded = kmeans_pp_seed(pooled.pool, k, pool_rng, 3, counter);
    LloydResult refined =
        run_lloyd(pooled.pool, seeded.centroids, StopRule{}, EmptyPolicy::KeepPrevious, counter);

    AssignOutcome final_pass = assign_points(X, refined.result.centroids, counter);
    ClusteringResult out;
    out.centroids = std::move(refined.result.centroids);
    out.assignment = std::move(final_pass.assignment);
    out.objective = final_pass.objective;
    out.n_d = counter.count() - nd0;
    out.n_s = 0;
    out.degenerate = pooled.dropped_any || seeded.duplicate_fallback;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace mssc
