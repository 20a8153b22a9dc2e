#include "mssc/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mssc {

Dataset::Dataset(std::size_t m_, std::size_t n_) : m(m_), n(n_), values(m_ * n_, 0.0) {}

Dataset Dataset::from_rows(std::size_t n, std::initializer_list<std::initializer_list<double>> rows) {
    Dataset X(rows.size(), n);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("ragged row in Dataset::from_rows");
        std::size_t j = 0;
        for (double v : r) X.values[i * n + j++] = v;
        ++i;
    }
    return X;
}

void Dataset::validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("dataset must have m >= 1 and n >= 1");
    if (values.size() != m * n) throw std::invalid_argument("dataset storage does not match m*n");
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("dataset contains non-finite value");
    }
}

Centroids::Centroids(std::size_t k_, std::size_t n_) : k(k_), n(n_), values(k_ * n_, 0.0) {}

namespace {

// Raw kernel; callers account for the evaluation themselves.
inline double sq_dist(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b, DistanceCounter& counter) {
    if (a.size() != b.size()) throw std::invalid_argument("squared_distance: dimension mismatch");
    counter.add(1);
    return sq_dist(a.data(), b.data(), a.size());
}

AssignOutcome assign_points(const Dataset& X, const Centroids& C, DistanceCounter& counter) {
    if (X.m == 0) throw std::invalid_argument("assign_points: empty dataset");
    if (X.n != C.n) throw std::invalid_argument("assign_points: dimension mismatch");
    if (C.k == 0) throw std::invalid_argument("assign_points: no centroids");

    AssignOutcome out;
    out.assignment.labels.resize(X.m);
    out.min_dists.resize(X.m);

    const std::size_t n = X.n;
    double f = 0.0;
    for (std::size_t i = 0; i < X.m; ++i) {
        const double* x = X.values.data() + i * n;
        double best = sq_dist(x, C.values.data(), n);
        std::uint32_t best_j = 0;
        for (std::size_t j = 1; j < C.k; ++j) {
            const double d = sq_dist(x, C.values.data() + j * n, n);
            if (d < best) {  // strict: ties keep the lowest index
                best = d;
                best_j = static_cast<std::uint32_t>(j);
            }
        }
        out.assignment.labels[i] = best_j;
        out.min_dists[i] = best;
        f += best;
    }
    counter.add(static_cast<std::uint64_t>(X.m) * C.k);
    out.objective = f;
    return out;
}

UpdateOutcome update_centroids(const Dataset& X, const Assignment& A, const Centroids& previous) {
    if (A.labels.size() != X.m) throw std::invalid_argument("update_centroids: assignment length mismatch");
    const std::size_t k = previous.k;
    const std::size_t n = X.n;

    UpdateOutcome out;
    out.centroids = Centroids(k, n);
    out.empty_flags.assign(k, true);
    std::vector<std::uint64_t> counts(k, 0);

    for (std::size_t i = 0; i < X.m; ++i) {
        const std::uint32_t j = A.labels[i];
        if (j >= k) throw std::invalid_argument("update_centroids: label out of range");
        const double* x = X.values.data() + i * n;
        double* c = out.centroids.values.data() + j * n;
        for (std::size_t d = 0; d < n; ++d) c[d] += x[d];
        ++counts[j];
    }
    for (std::size_t j = 0; j < k; ++j) {
        double* c = out.centroids.values.data() + j * n;
        if (counts[j] > 0) {
            out.empty_flags[j] = false;
            const double inv = 1.0 / static_cast<double>(counts[j]);
            for (std::size_t d = 0; d < n; ++d) c[d] *= inv;
        } else {
            const double* p = previous.values.data() + j * n;
            for (std::size_t d = 0; d < n; ++d) c[d] = p[d];
        }
    }
    return out;
}

double relative_error(double f, double f_star) {
    if (!(f_star > 0.0)) throw std::invalid_argument("relative_error: baseline must be positive");
    return 100.0 * (f - f_star) / f_star;
}

}  // namespace mssc
