#pragma once

#include "mssc/core.hpp"

namespace mssc {

/// Stopping rule for the local search: hard iteration cap plus a relative
/// tolerance on successive objective values.
struct StopRule {
    std::size_t max_iters = 300;
    double rel_tol = 1e-4;
};

enum class EmptyPolicy {
    KeepPrevious,       // empty centroid keeps its coordinates
    ReseedFarthest,     // empty centroid jumps to the point farthest from its centroid
};

enum class StopReason {
    Converged,   // no assignment changed
    MaxIters,
    RelTol,
};

struct LloydResult {
    ClusteringResult result;
    std::size_t iterations = 0;       // number of assignment passes
    StopReason stop_reason = StopReason::Converged;
    std::vector<double> objective_trace;  // one value per assignment pass, non-increasing
};

/// Alternating assignment / update from the given initial centroids. Continues
/// while assignments changed AND iterations < max_iters AND the relative
/// objective change stays >= rel_tol.
LloydResult run_lloyd(const Dataset& X, const Centroids& C0, const StopRule& stop,
                      EmptyPolicy empty_policy, DistanceCounter& counter);

}  // namespace mssc
