#include "mssc/init.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mssc/rng.hpp"

namespace mssc {

namespace {

// First `k` slots of a partial Fisher-Yates shuffle over [0, m).
std::vector<std::size_t> sample_indices(std::size_t m, std::size_t k, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> dist(i, m - 1);
        std::swap(idx[i], idx[dist(rng)]);
    }
    idx.resize(k);
    return idx;
}

inline double sq_dist(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

// Cumulative-sum inversion of `weights` on a single uniform draw.
std::size_t weighted_pick(const std::vector<double>& weights, double total, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, total);
    const double r = unit(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc) return i;
    }
    // r landed on the tail of the accumulated rounding error
    for (std::size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0.0) return i;
    }
    return weights.size() - 1;
}

}  // namespace

Centroids forgy_seed(const Dataset& X, std::size_t k, std::mt19937_64& rng) {
    if (k > X.m) throw std::invalid_argument("forgy_seed: k exceeds point count");
    if (k < 1) throw std::invalid_argument("forgy_seed: k must be >= 1");
    const auto picks = sample_indices(X.m, k, rng);
    Centroids C(k, X.n);
    for (std::size_t j = 0; j < k; ++j) {
        auto src = X.row(picks[j]);
        std::copy(src.begin(), src.end(), C.row(j).begin());
    }
    return C;
}

Centroids bounding_box_seed(const Dataset& X, std::size_t k, std::mt19937_64& rng) {
    if (k < 1) throw std::invalid_argument("bounding_box_seed: k must be >= 1");
    std::vector<double> lo(X.n, std::numeric_limits<double>::infinity());
    std::vector<double> hi(X.n, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < X.m; ++i) {
        auto x = X.row(i);
        for (std::size_t d = 0; d < X.n; ++d) {
            lo[d] = std::min(lo[d], x[d]);
            hi[d] = std::max(hi[d], x[d]);
        }
    }
    Centroids C(k, X.n);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t d = 0; d < X.n; ++d) {
            std::uniform_real_distribution<double> dist(lo[d], hi[d]);
            C.row(j)[d] = dist(rng);
        }
    }
    return C;
}

std::vector<std::size_t> kmeans_pp_extend(const Dataset& X, const Centroids& existing,
                                          std::size_t n_new, std::mt19937_64& rng,
                                          int n_candidates, DistanceCounter& counter,
                                          bool* duplicate_fallback) {
    if (n_candidates < 1) throw std::invalid_argument("kmeans_pp_extend: n_candidates must be >= 1");
    if (duplicate_fallback) *duplicate_fallback = false;

    const std::size_t m = X.m;
    const std::size_t n = X.n;
    std::vector<std::size_t> chosen;
    chosen.reserve(n_new);

    std::vector<double> closest(m, std::numeric_limits<double>::infinity());
    std::vector<bool> taken(m, false);
    double pot = 0.0;

    auto fold_center = [&](const double* c) {
        pot = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = sq_dist(X.values.data() + i * n, c, n);
            if (d < closest[i]) closest[i] = d;
            pot += closest[i];
        }
        counter.add(m);
    };

    std::size_t remaining = n_new;
    if (existing.k == 0) {
        if (remaining == 0) return chosen;
        std::uniform_int_distribution<std::size_t> uid(0, m - 1);
        const std::size_t first = uid(rng);
        chosen.push_back(first);
        taken[first] = true;
        fold_center(X.values.data() + first * n);
        --remaining;
    } else {
        for (std::size_t j = 0; j < existing.k; ++j) fold_center(existing.values.data() + j * n);
    }

    std::vector<double> cand_closest(m);
    for (; remaining > 0; --remaining) {
        if (!(pot > 0.0)) {
            // every remaining point coincides with a chosen center: Forgy
            // among the untaken duplicates
            if (duplicate_fallback) *duplicate_fallback = true;
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < m; ++i) {
                if (!taken[i]) free.push_back(i);
            }
            std::shuffle(free.begin(), free.end(), rng);
            for (std::size_t t = 0; t < remaining && t < free.size(); ++t) {
                chosen.push_back(free[t]);
                taken[free[t]] = true;
            }
            break;
        }

        std::size_t best_idx = m;
        double best_pot = std::numeric_limits<double>::infinity();
        std::vector<double> best_closest;
        for (int c = 0; c < n_candidates; ++c) {
            const std::size_t cand = weighted_pick(closest, pot, rng);
            double cand_pot = 0.0;
            const double* cp = X.values.data() + cand * n;
            for (std::size_t i = 0; i < m; ++i) {
                double d = sq_dist(X.values.data() + i * n, cp, n);
                if (closest[i] < d) d = closest[i];
                cand_closest[i] = d;
                cand_pot += d;
            }
            counter.add(m);
            if (cand_pot < best_pot) {
                best_pot = cand_pot;
                best_idx = cand;
                best_closest = cand_closest;
            }
        }
        chosen.push_back(best_idx);
        taken[best_idx] = true;
        closest = std::move(best_closest);
        pot = best_pot;
    }
    return chosen;
}

SeedOutcome kmeans_pp_seed(const Dataset& X, std::size_t k, std::mt19937_64& rng,
                           int n_candidates, DistanceCounter& counter) {
    if (k > X.m) throw std::invalid_argument("kmeans_pp_seed: k exceeds point count");
    if (k < 1) throw std::invalid_argument("kmeans_pp_seed: k must be >= 1");

    SeedOutcome out;
    const auto picks =
        kmeans_pp_extend(X, Centroids(0, X.n), k, rng, n_candidates, counter, &out.duplicate_fallback);
    out.centroids = Centroids(k, X.n);
    for (std::size_t j = 0; j < picks.size(); ++j) {
        auto src = X.row(picks[j]);
        std::copy(src.begin(), src.end(), out.centroids.row(j).begin());
    }
    return out;
}

ClusteringResult multi_start(const Dataset& X, std::size_t k, std::size_t restarts,
                             std::uint64_t seed, const StopRule& stop, DistanceCounter& counter) {
    if (restarts < 1) throw std::invalid_argument("multi_start: restarts must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();

    ClusteringResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        auto rng = make_rng(derive_seed(seed, r));
        Centroids C0 = forgy_seed(X, k, rng);
        LloydResult run = run_lloyd(X, C0, stop, EmptyPolicy::KeepPrevious, counter);
        if (run.result.objective < best.objective) {
            best = std::move(run.result);
        }
    }
    best.n_d = counter.count() - nd0;
    best.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

}  // namespace mssc
