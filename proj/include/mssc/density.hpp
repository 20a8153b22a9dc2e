#pragma once

#include <random>

#include "mssc/core.hpp"

namespace mssc {

struct DbscanParams {
    double eps = 0.0;
    std::size_t min_pts = 1;
};

constexpr std::int32_t kNoise = -1;

/// Brute-force DBSCAN: a point is core when at least min_pts points (itself
/// included) lie within eps; core points expand into maximal density-connected
/// clusters in canonical index order; border points join the first cluster
/// that reaches them; the rest are noise (-1).
std::vector<std::int32_t> dbscan(const Dataset& X, const DbscanParams& params,
                                 DistanceCounter& counter);

struct CanopyThresholds {
    double t1 = 0.0;  ///< loose join radius (t1 > t2 > 0)
    double t2 = 0.0;  ///< tight removal radius
};

struct Canopy {
    std::size_t center = 0;              ///< row of X acting as the canopy center
    std::vector<std::size_t> members;    ///< rows within t1 of the center
};

struct CanopySet {
    std::vector<Canopy> canopies;
};

/// Classic canopy pass: draw a random remaining candidate as a center, join
/// everything within t1, strike everything within t2 from future candidacy.
CanopySet canopy(const Dataset& X, const CanopyThresholds& thresholds, std::mt19937_64& rng);

/// DBSCAN-seeded pipeline: redraw a uniform sample each round, pool the mean
/// of every DBSCAN component, stop once the pool holds at least k centroids
/// (topping up from X by D^2 draws after max_rounds, flagged degenerate),
/// pick k pool members by D^2 seeding, then run Lloyd on the full dataset.
ClusteringResult run_cludatase(const Dataset& X, std::size_t k, std::size_t s,
                               const DbscanParams& params, std::mt19937_64& rng,
                               std::size_t max_rounds, DistanceCounter& counter);

}  // namespace mssc
