#include "mssc/density.hpp"

#include <chrono>
#include <deque>
#include <stdexcept>

#include "mssc/init.hpp"
#include "mssc/lloyd.hpp"

namespace mssc {

namespace {

inline double sq_dist(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

}  // namespace

std::vector<std::int32_t> dbscan(const Dataset& X, const DbscanParams& params,
                                 DistanceCounter& counter) {
    if (params.eps <= 0.0) throw std::invalid_argument("dbscan: eps must be positive");
    if (params.min_pts < 1) throw std::invalid_argument("dbscan: min_pts must be positive");

    const std::size_t m = X.m;
    const std::size_t n = X.n;
    const double eps2 = params.eps * params.eps;

    std::vector<std::vector<std::size_t>> neighbors(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double* xi = X.values.data() + i * n;
        for (std::size_t j = 0; j < m; ++j) {
            if (sq_dist(xi, X.values.data() + j * n, n) <= eps2) neighbors[i].push_back(j);
        }
        counter.add(m);
    }

    constexpr std::int32_t kUnvisited = -2;
    std::vector<std::int32_t> labels(m, kUnvisited);
    std::int32_t next_cluster = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (labels[i] != kUnvisited) continue;
        if (neighbors[i].size() < params.min_pts) {
            labels[i] = kNoise;
            continue;
        }
        const std::int32_t cid = next_cluster++;
        labels[i] = cid;
        std::deque<std::size_t> frontier(neighbors[i].begin(), neighbors[i].end());
        while (!frontier.empty()) {
            const std::size_t j = frontier.front();
            frontier.pop_front();
            if (labels[j] == kNoise) labels[j] = cid;  // border point, keep first reacher
            if (labels[j] != kUnvisited) continue;
            labels[j] = cid;
            if (neighbors[j].size() >= params.min_pts) {
                frontier.insert(frontier.end(), neighbors[j].begin(), neighbors[j].end());
            }
        }
    }
    return labels;
}

CanopySet canopy(const Dataset& X, const CanopyThresholds& thresholds, std::mt19937_64& rng) {
    if (!(thresholds.t1 > thresholds.t2) || !(thresholds.t2 > 0.0))
        throw std::invalid_argument("canopy: need t1 > t2 > 0");

    const std::size_t n = X.n;
    const double t1_sq = thresholds.t1 * thresholds.t1;
    const double t2_sq = thresholds.t2 * thresholds.t2;

    std::vector<std::size_t> candidates(X.m);
    for (std::size_t i = 0; i < X.m; ++i) candidates[i] = i;

    CanopySet out;
    while (!candidates.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        const std::size_t center = candidates[pick(rng)];
        const double* cx = X.values.data() + center * n;

        Canopy cp;
        cp.center = center;
        for (std::size_t i = 0; i < X.m; ++i) {
            if (sq_dist(cx, X.values.data() + i * n, n) < t1_sq) cp.members.push_back(i);
        }
        out.canopies.push_back(std::move(cp));

        std::vector<std::size_t> remaining;
        remaining.reserve(candidates.size());
        for (std::size_t i : candidates) {
            if (sq_dist(cx, X.values.data() + i * n, n) >= t2_sq) remaining.push_back(i);
        }
        candidates.swap(remaining);
    }
    return out;
}

ClusteringResult run_cludatase(const Dataset& X, std::size_t k, std::size_t s,
                               const DbscanParams& params, std::mt19937_64& rng,
                               std::size_t max_rounds, DistanceCounter& counter) {
    if (k < 1 || k > s) throw std::invalid_argument("run_cludatase: need 1 <= k <= s");
    if (s > X.m) throw std::invalid_argument("run_cludatase: s exceeds dataset size");
    if (max_rounds < 1) throw std::invalid_argument("run_cludatase: max_rounds must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();
    const std::size_t n = X.n;

    Dataset pool;
    pool.n = n;
    std::vector<std::size_t> indices(X.m);
    for (std::size_t i = 0; i < X.m; ++i) indices[i] = i;

    for (std::size_t round = 0; round < max_rounds && pool.m < k; ++round) {
        for (std::size_t i = 0; i < s; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, X.m - 1);
            std::swap(indices[i], indices[pick(rng)]);
        }
        Dataset S;
        S.m = s;
        S.n = n;
        S.values.resize(s * n);
        for (std::size_t i = 0; i < s; ++i) {
            const double* src = X.values.data() + indices[i] * n;
            std::copy(src, src + n, S.values.begin() + static_cast<std::ptrdiff_t>(i * n));
        }

        const std::vector<std::int32_t> labels = dbscan(S, params, counter);
        std::int32_t components = 0;
        for (std::int32_t l : labels) components = std::max(components, l + 1);
        std::vector<std::vector<double>> sums(static_cast<std::size_t>(components),
                                              std::vector<double>(n, 0.0));
        std::vector<std::size_t> counts(static_cast<std::size_t>(components), 0);
        for (std::size_t i = 0; i < s; ++i) {
            if (labels[i] < 0) continue;
            const double* x = S.values.data() + i * n;
            std::vector<double>& acc = sums[static_cast<std::size_t>(labels[i])];
            for (std::size_t d = 0; d < n; ++d) acc[d] += x[d];
            ++counts[static_cast<std::size_t>(labels[i])];
        }
        for (std::size_t c = 0; c < counts.size(); ++c) {
            for (std::size_t d = 0; d < n; ++d) {
                pool.values.push_back(sums[c][d] / static_cast<double>(counts[c]));
            }
            ++pool.m;
        }
    }

    bool topped_up = false;
    if (pool.m < k) {
        // rounds exhausted: fill the gap with D^2 draws from X itself
        topped_up = true;
        Centroids existing(pool.m, n);
        existing.values = pool.values;
        const std::vector<std::size_t> fresh =
            kmeans_pp_extend(X, existing, k - pool.m, rng, 3, counter);
        for (std::size_t r : fresh) {
            const double* src = X.values.data() + r * n;
            pool.values.insert(pool.values.end(), src, src + n);
            ++pool.m;
        }
    }

    SeedOutcome seeds = kmeans_pp_seed(pool, k, rng, 3, counter);
    LloydResult refined =
        run_lloyd(X, seeds.centroids, StopRule{}, EmptyPolicy::KeepPrevious, counter);

    ClusteringResult out = std::move(refined.result);
    out.n_d = counter.count() - nd0;
    out.n_s = s;
    out.degenerate = out.degenerate || topped_up || seeds.duplicate_fallback;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace mssc
