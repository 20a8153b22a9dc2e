#include "mssc/accel.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mssc/init.hpp"

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

IkMeansResult run_ikmeans_from(const Dataset& X, const Centroids& C0, const StopRule& stop,
                               std::size_t recheck_period, DistanceCounter& counter,
                               ExclusionMode mode) {
    if (X.n != C0.n) throw std::invalid_argument("run_ikmeans: dimension mismatch");
    if (recheck_period < 1) throw std::invalid_argument("run_ikmeans: recheck_period must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();
    const std::size_t m = X.m;
    const std::size_t n = X.n;
    const std::size_t k = C0.k;

    IkMeansResult out;
    Centroids C = C0;
    std::vector<std::uint32_t> A(m, 0);
    std::vector<double> radii(k, 0.0);   // R: max member distance per cluster
    std::vector<double> shifts(k, 0.0);  // S: distance each centroid moved last update
    std::vector<bool> excluded(m, false);
    std::vector<double> dcache(m, 0.0);  // last computed squared distance to own centroid
    std::size_t n_excluded = 0;
    double f_prev = std::numeric_limits<double>::infinity();

    for (std::size_t t = 1; t <= stop.max_iters; ++t) {
        if (t % recheck_period == 0 && n_excluded > 0) {
            // pull back any stabilized point that drifted outside its cluster radius
            for (std::size_t i = 0; i < m; ++i) {
                if (!excluded[i]) continue;
                const double d2 = sq_dist(X.values.data() + i * n, C.values.data() + A[i] * n, n);
                counter.add(1);
                if (std::sqrt(d2) > radii[A[i]]) {
                    excluded[i] = false;
                    --n_excluded;
                }
            }
        }

        bool changed = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (excluded[i]) continue;
            const double* x = X.values.data() + i * n;
            double d1 = std::numeric_limits<double>::infinity();
            double d2 = std::numeric_limits<double>::infinity();
            std::uint32_t idx1 = 0, idx2 = 0;
            for (std::size_t j = 0; j < k; ++j) {
                const double d = sq_dist(x, C.values.data() + j * n, n);
                if (d < d1) {
                    d2 = d1;
                    idx2 = idx1;
                    d1 = d;
                    idx1 = static_cast<std::uint32_t>(j);
                } else if (d < d2) {
                    d2 = d;
                    idx2 = static_cast<std::uint32_t>(j);
                }
            }
            counter.add(k);
            if (A[i] != idx1) changed = true;
            A[i] = idx1;
            dcache[i] = d1;
            if (t >= 2 && k >= 2) {
                bool stable = false;
                switch (mode) {
                    case ExclusionMode::Verbatim:
                        stable = std::abs(d1 - d2) > shifts[idx1] + shifts[idx2];
                        break;
                    case ExclusionMode::StrictElkan:
                        stable = std::sqrt(d2) - std::sqrt(d1) > shifts[idx1] + shifts[idx2];
                        break;
                    case ExclusionMode::Disabled:
                        break;
                }
                if (stable) {
                    excluded[i] = true;
                    ++n_excluded;
                }
            }
        }
        out.iterations = t;
        out.peak_excluded = std::max(out.peak_excluded, n_excluded);

        if (n_excluded == m) break;
        if (t > 1 && !changed && n_excluded == 0) break;  // assignments settled
        if (t == stop.max_iters) break;

        // approximate in the accelerated modes: excluded entries of dcache are
        // stale, which only loosens the relative-improvement stop
        double f = 0.0;
        for (std::size_t i = 0; i < m; ++i) f += dcache[i];
        if (std::isfinite(f_prev) && f_prev > 0.0 &&
            std::abs(f_prev - f) / f_prev < stop.rel_tol) {
            break;
        }
        f_prev = f;

        // centroid / radius / shift refresh
        Centroids C_new(k, n);
        std::vector<std::uint64_t> counts(k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            const double* x = X.values.data() + i * n;
            double* c = C_new.values.data() + A[i] * n;
            for (std::size_t d = 0; d < n; ++d) c[d] += x[d];
            ++counts[A[i]];
        }
        for (std::size_t j = 0; j < k; ++j) {
            double* c = C_new.values.data() + j * n;
            if (counts[j] > 0) {
                const double inv = 1.0 / static_cast<double>(counts[j]);
                for (std::size_t d = 0; d < n; ++d) c[d] *= inv;
            } else {
                const double* p = C.values.data() + j * n;
                for (std::size_t d = 0; d < n; ++d) c[d] = p[d];
            }
        }
        if (mode != ExclusionMode::Disabled) {
            std::fill(radii.begin(), radii.end(), 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                const double d2 =
                    sq_dist(X.values.data() + i * n, C_new.values.data() + A[i] * n, n);
                radii[A[i]] = std::max(radii[A[i]], std::sqrt(d2));
            }
            counter.add(m);
            for (std::size_t j = 0; j < k; ++j) {
                shifts[j] =
                    std::sqrt(sq_dist(C.values.data() + j * n, C_new.values.data() + j * n, n));
            }
            counter.add(k);
        }
        C = std::move(C_new);
    }

    // exact reported assignment and objective; stored distances of excluded
    // points are stale once their centroid has moved
    AssignOutcome final_pass = assign_points(X, C, counter);
    ++out.iterations;
    out.result.centroids = std::move(C);
    out.result.assignment = std::move(final_pass.assignment);
    out.result.objective = final_pass.objective;
    out.result.n_d = counter.count() - nd0;
    out.result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

IkMeansResult run_ikmeans(const Dataset& X, std::size_t k, std::mt19937_64& rng,
                          const StopRule& stop, std::size_t recheck_period,
                          DistanceCounter& counter, ExclusionMode mode) {
    if (k > X.m) throw std::invalid_argument("run_ikmeans: k exceeds point count");
    Centroids C0 = forgy_seed(X, k, rng);
    return run_ikmeans_from(X, C0, stop, recheck_period, counter, mode);
}

}  // namespace mssc
