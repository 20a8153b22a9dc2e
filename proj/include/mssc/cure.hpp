#pragma once

#include <random>

#include "mssc/core.hpp"

namespace mssc {

struct CureParams {
    std::size_t k = 0;      ///< target cluster count
    std::size_t s = 0;      ///< sample size, k <= s <= m
    std::size_t f = 1;      ///< partition factor: p = max(1, s / (f * k * q))
    std::size_t q = 1;      ///< per-partition over-clustering factor (to q * k clusters)
    std::size_t c = 1;      ///< representatives per cluster
    double alpha = 0.5;     ///< shrink fraction toward the cluster centroid, in [0, 1]
};

/// One cluster of the pooled stage: centroid, member count, and its shrunken
/// representative points (each lies on the segment between a sampled point
/// and the centroid).
struct RepCluster {
    std::vector<double> centroid;
    std::vector<double> representatives;  ///< row-major, reps x n
    std::size_t rep_count = 0;
    std::size_t members = 0;
};

/// Pick up to c well-scattered members farthest-first from the centroid and
/// shrink them by alpha toward it. Exposed for the shrink-identity checks.
RepCluster make_rep_cluster(const Dataset& points, const std::vector<std::size_t>& member_rows,
                            std::size_t c, double alpha, DistanceCounter& counter);

/// Sample, partition, centroid-linkage agglomeration of each partition to
/// q*k clusters, representative selection with alpha-shrinking, pooled
/// agglomeration to k under the minimum representative-set distance, then
/// nearest-representative assignment of all of X. The reported centroids and
/// objective are the per-cluster means of that assignment, so the objective
/// is a plain MSSC value.
ClusteringResult run_cure(const Dataset& X, const CureParams& params, std::mt19937_64& rng,
                          DistanceCounter& counter);

}  // namespace mssc
