#include "mssc/coreset.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "mssc/init.hpp"
#include "mssc/lloyd.hpp"

namespace mssc {

std::vector<double> lightweight_coreset_probabilities(const Dataset& X, DistanceCounter& counter,
                                                      bool* uniform_fallback) {
    const std::size_t m = X.m;
    const std::size_t n = X.n;
    if (m == 0) throw std::invalid_argument("coreset probabilities: empty dataset");

    // pass 1: mean
    std::vector<double> mu(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* x = X.values.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) mu[j] += x[j];
    }
    for (double& v : mu) v /= static_cast<double>(m);

    // pass 2: squared distances to the mean and their sum
    std::vector<double> d2(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* x = X.values.data() + i * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = x[j] - mu[j];
            acc += d * d;
        }
        d2[i] = acc;
    }
    counter.add(m);
    const double D = std::accumulate(d2.begin(), d2.end(), 0.0);

    std::vector<double> q(m);
    if (D <= 0.0) {
        std::fill(q.begin(), q.end(), 1.0 / static_cast<double>(m));
        if (uniform_fallback) *uniform_fallback = true;
        return q;
    }
    if (uniform_fallback) *uniform_fallback = false;
    const double base = 1.0 / (2.0 * static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) q[i] = base + 0.5 * d2[i] / D;
    return q;
}

CoresetSample build_lightweight_coreset(const Dataset& X, std::size_t s, std::mt19937_64& rng,
                                        DistanceCounter& counter) {
    if (s < 2 || s > X.m)
        throw std::invalid_argument("build_lightweight_coreset: s must be in [2, m]");

    CoresetSample out;
    std::vector<double> weight = lightweight_coreset_probabilities(X, counter, &out.uniform_fallback);
    const std::vector<double> q = weight;

    // sequential weighted draws without replacement: a drawn point's weight
    // drops to zero and the remaining mass renormalizes implicitly
    double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    out.points.n = X.n;
    out.points.values.reserve(s * X.n);
    for (std::size_t draw = 0; draw < s; ++draw) {
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng);
        std::size_t pick = X.m;
        for (std::size_t i = 0; i < X.m; ++i) {
            if (weight[i] <= 0.0) continue;
            if (target < weight[i]) {
                pick = i;
                break;
            }
            target -= weight[i];
            pick = i;  // rounding guard: last positive-weight point absorbs the tail
        }
        out.indices.push_back(pick);
        out.probabilities.push_back(q[pick]);
        const double* src = X.values.data() + pick * X.n;
        out.points.values.insert(out.points.values.end(), src, src + X.n);
        ++out.points.m;
        total -= weight[pick];
        weight[pick] = 0.0;
    }
    return out;
}

ClusteringResult run_lw_coreset(const Dataset& X, std::size_t k, std::size_t s,
                                std::mt19937_64& rng, DistanceCounter& counter) {
    if (k > s) throw std::invalid_argument("run_lw_coreset: k exceeds coreset size");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();

    CoresetSample coreset = build_lightweight_coreset(X, s, rng, counter);
    SeedOutcome seeded = kmeans_pp_seed(coreset.points, k, rng, 3, counter);
    LloydResult refined =
        run_lloyd(coreset.points, seeded.centroids, StopRule{}, EmptyPolicy::KeepPrevious, counter);

    AssignOutcome final_pass = assign_points(X, refined.result.centroids, counter);
    ClusteringResult out;
    out.centroids = std::move(refined.result.centroids);
    out.assignment = std::move(final_pass.assignment);
    out.objective = final_pass.objective;
    out.n_d = counter.count() - nd0;
    out.n_s = s;
    out.degenerate = coreset.uniform_fallback || seeded.duplicate_fallback;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace mssc
