#pragma once

#include <random>

#include "mssc/core.hpp"
#include "mssc/lloyd.hpp"

namespace mssc {

/// How the point-exclusion inequality is evaluated.
enum class ExclusionMode {
    Verbatim,     // |d1^2 - d2^2| > S[idx1] + S[idx2], squared gaps vs plain shifts
    StrictElkan,  // d2 - d1 > S[idx1] + S[idx2] on un-squared values
    Disabled,     // never exclude; degenerates to plain Lloyd
};

struct IkMeansResult {
    ClusteringResult result;
    std::size_t iterations = 0;
    std::size_t peak_excluded = 0;
};

/// Early-classification K-means: stabilized points skip the assignment scan
/// until a periodic radius recheck pulls them back in. Terminates early once
/// every point is excluded.
IkMeansResult run_ikmeans(const Dataset& X, std::size_t k, std::mt19937_64& rng,
                          const StopRule& stop, std::size_t recheck_period,
                          DistanceCounter& counter, ExclusionMode mode = ExclusionMode::Verbatim);

/// Same search started from explicit centroids; used for head-to-head
/// comparisons with run_lloyd.
IkMeansResult run_ikmeans_from(const Dataset& X, const Centroids& C0, const StopRule& stop,
                               std::size_t recheck_period, DistanceCounter& counter,
                               ExclusionMode mode = ExclusionMode::Verbatim);

}  // namespace mssc
