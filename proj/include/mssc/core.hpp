#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mssc {

/// Dense row-major dataset of m points with n features each.
struct Dataset {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> values;  // row-major, m*n

    Dataset() = default;
    Dataset(std::size_t m_, std::size_t n_);
    static Dataset from_rows(std::size_t n, std::initializer_list<std::initializer_list<double>> rows);

    std::span<const double> row(std::size_t i) const { return {values.data() + i * n, n}; }
    std::span<double> row(std::size_t i) { return {values.data() + i * n, n}; }

    /// Throws std::invalid_argument on empty shape or non-finite values.
    void validate() const;
};

/// k cluster centers over the same feature space as the dataset they serve.
struct Centroids {
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<double> values;  // row-major, k*n

    Centroids() = default;
    Centroids(std::size_t k_, std::size_t n_);

    std::span<const double> row(std::size_t j) const { return {values.data() + j * n, n}; }
    std::span<double> row(std::size_t j) { return {values.data() + j * n, n}; }

    bool operator==(const Centroids&) const = default;
};

/// Per-point cluster labels, each in [0, k).
struct Assignment {
    std::vector<std::uint32_t> labels;

    bool operator==(const Assignment&) const = default;
};

/// Tally of squared-distance evaluations. Safe to share across workers.
class DistanceCounter {
public:
    DistanceCounter() = default;

    void add(std::uint64_t evals) { n_d_.fetch_add(evals, std::memory_order_relaxed); }
    std::uint64_t count() const { return n_d_.load(std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> n_d_{0};
};

struct ClusteringResult {
    Centroids centroids;
    Assignment assignment;
    double objective = 0.0;
    double elapsed_seconds = 0.0;
    std::uint64_t n_d = 0;
    std::uint64_t n_s = 0;  // samples processed; 0 for non-sampling algorithms
    bool degenerate = false;  // a fallback path fired (duplicate data, short pool, ...)
};

/// Squared Euclidean distance between two points of equal dimension.
/// Advances the counter by exactly one evaluation.
double squared_distance(std::span<const double> a, std::span<const double> b, DistanceCounter& counter);

/// Nearest-centroid assignment for every point plus the MSSC objective.
/// Ties go to the lowest centroid index. Advances the counter by exactly m*k.
struct AssignOutcome {
    Assignment assignment;
    double objective = 0.0;
    std::vector<double> min_dists;  // per-point distance to its centroid
};
AssignOutcome assign_points(const Dataset& X, const Centroids& C, DistanceCounter& counter);

/// Mean of each cluster's members. Clusters that received no points keep their
/// previous coordinates and are flagged; no error is raised.
struct UpdateOutcome {
    Centroids centroids;
    std::vector<bool> empty_flags;
};
UpdateOutcome update_centroids(const Dataset& X, const Assignment& A, const Centroids& previous);

/// Relative error in percent: 100 * (f - f_star) / f_star. Negative when f beats
/// the baseline. Throws for f_star <= 0.
double relative_error(double f, double f_star);

}  // namespace mssc
