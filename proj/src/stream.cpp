#include "mssc/stream.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

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

std::uint32_t nearest_centroid(const Centroids& C, const double* x, DistanceCounter& counter) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_j = 0;
    for (std::size_t j = 0; j < C.k; ++j) {
        const double d = sq_dist(x, C.values.data() + j * C.n, C.n);
        if (d < best) {
            best = d;
            best_j = static_cast<std::uint32_t>(j);
        }
    }
    counter.add(C.k);
    return best_j;
}

}  // namespace

ClusteringResult run_minibatch(const Dataset& X, const Centroids& C0, std::size_t batch_size,
                               std::size_t iterations, std::mt19937_64& rng,
                               DistanceCounter& counter) {
    if (X.n != C0.n) throw std::invalid_argument("run_minibatch: dimension mismatch");
    if (batch_size == 0 || batch_size > X.m)
        throw std::invalid_argument("run_minibatch: batch_size must be in [1, m]");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();
    const std::size_t n = X.n;
    const std::size_t k = C0.k;

    Centroids C = C0;
    std::vector<std::uint64_t> counts(k, 0);
    std::vector<std::size_t> pool(X.m);
    for (std::size_t i = 0; i < X.m; ++i) pool[i] = i;

    std::vector<double> batch_sum(k * n);
    std::vector<std::uint64_t> batch_count(k);

    for (std::size_t t = 0; t < iterations; ++t) {
        // partial Fisher-Yates: the first batch_size entries of pool become a
        // uniform without-replacement draw
        for (std::size_t i = 0; i < batch_size; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, X.m - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        std::fill(batch_sum.begin(), batch_sum.end(), 0.0);
        std::fill(batch_count.begin(), batch_count.end(), 0);
        for (std::size_t i = 0; i < batch_size; ++i) {
            const double* x = X.values.data() + pool[i] * n;
            const std::uint32_t j = nearest_centroid(C, x, counter);
            double* s = batch_sum.data() + j * n;
            for (std::size_t d = 0; d < n; ++d) s[d] += x[d];
            ++batch_count[j];
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (batch_count[j] == 0) continue;
            double* c = C.values.data() + j * n;
            const double* s = batch_sum.data() + j * n;
            const double denom = static_cast<double>(counts[j] + batch_count[j]);
            for (std::size_t d = 0; d < n; ++d) {
                c[d] = (c[d] * static_cast<double>(counts[j]) + s[d]) / denom;
            }
            counts[j] += batch_count[j];
        }
    }

    AssignOutcome final_pass = assign_points(X, C, counter);
    ClusteringResult out;
    out.centroids = std::move(C);
    out.assignment = std::move(final_pass.assignment);
    out.objective = final_pass.objective;
    out.n_d = counter.count() - nd0;
    out.n_s = iterations * batch_size;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

OnlineState online_init(const Centroids& C0) {
    return OnlineState{C0, std::vector<std::uint64_t>(C0.k, 1)};
}

std::uint32_t online_update(OnlineState& state, const double* x, std::size_t n,
                            DistanceCounter& counter) {
    if (n != state.centroids.n) throw std::invalid_argument("online_update: dimension mismatch");
    const std::uint32_t j = nearest_centroid(state.centroids, x, counter);
    double* c = state.centroids.values.data() + j * n;
    const double cnt = static_cast<double>(state.counts[j]);
    for (std::size_t d = 0; d < n; ++d) c[d] = (c[d] * cnt + x[d]) / (cnt + 1.0);
    ++state.counts[j];
    return j;
}

ClusteringResult run_online(const Dataset& X, std::size_t k, DistanceCounter& counter) {
    if (k == 0 || k > X.m) throw std::invalid_argument("run_online: k must be in [1, m]");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();

    Centroids C0(k, X.n);
    std::copy(X.values.begin(), X.values.begin() + static_cast<std::ptrdiff_t>(k * X.n),
              C0.values.begin());
    OnlineState state = online_init(C0);
    for (std::size_t i = k; i < X.m; ++i) {
        online_update(state, X.values.data() + i * X.n, X.n, counter);
    }

    AssignOutcome final_pass = assign_points(X, state.centroids, counter);
    ClusteringResult out;
    out.centroids = std::move(state.centroids);
    out.assignment = std::move(final_pass.assignment);
    out.objective = final_pass.objective;
    out.n_d = counter.count() - nd0;
    out.n_s = X.m;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void drain_stream(OnlineState& state, const std::function<bool(std::vector<double>&)>& next,
                  DistanceCounter& counter) {
    std::vector<double> buf(state.centroids.n);
    while (next(buf)) online_update(state, buf.data(), buf.size(), counter);
}

}  // namespace mssc
