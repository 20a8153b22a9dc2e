#include "mssc/lloyd.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mssc {

LloydResult run_lloyd(const Dataset& X, const Centroids& C0, const StopRule& stop,
                      EmptyPolicy empty_policy, DistanceCounter& counter) {
    if (X.n != C0.n) throw std::invalid_argument("run_lloyd: dimension mismatch");
    if (stop.max_iters < 1) throw std::invalid_argument("run_lloyd: max_iters must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();

    LloydResult out;
    Centroids C = C0;
    Assignment prev;
    double prev_f = std::numeric_limits<double>::infinity();
    bool have_prev = false;

    while (true) {
        AssignOutcome pass = assign_points(X, C, counter);
        ++out.iterations;
        out.objective_trace.push_back(pass.objective);

        const bool changed = !have_prev || pass.assignment != prev;
        out.result.assignment = std::move(pass.assignment);
        out.result.objective = pass.objective;

        if (!changed) {
            out.stop_reason = StopReason::Converged;
            break;
        }
        if (out.iterations >= stop.max_iters) {
            out.stop_reason = StopReason::MaxIters;
            break;
        }
        if (have_prev && std::abs(prev_f - pass.objective) / prev_f < stop.rel_tol) {
            out.stop_reason = StopReason::RelTol;
            break;
        }

        UpdateOutcome upd = update_centroids(X, out.result.assignment, C);
        if (empty_policy == EmptyPolicy::ReseedFarthest) {
            for (std::size_t j = 0; j < upd.centroids.k; ++j) {
                if (!upd.empty_flags[j]) continue;
                // farthest point from its current centroid, reusing the
                // distances cached by the assignment pass
                std::size_t far = 0;
                for (std::size_t i = 1; i < X.m; ++i) {
                    if (pass.min_dists[i] > pass.min_dists[far]) far = i;
                }
                auto dst = upd.centroids.row(j);
                auto src = X.row(far);
                for (std::size_t d = 0; d < X.n; ++d) dst[d] = src[d];
                pass.min_dists[far] = 0.0;  // avoid reseeding two empties onto one point
            }
        }
        // means identical to the current centroids: the next pass cannot
        // change anything, so stop without spending it
        const bool centroids_fixed = upd.centroids == C;
        C = std::move(upd.centroids);
        if (centroids_fixed) {
            out.stop_reason = StopReason::Converged;
            break;
        }

        prev = out.result.assignment;
        prev_f = pass.objective;
        have_prev = true;
    }

    out.result.centroids = std::move(C);
    out.result.n_d = counter.count() - nd0;
    out.result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace mssc
