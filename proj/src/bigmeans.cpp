#include "mssc/bigmeans.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include "mssc/init.hpp"
#include "mssc/rng.hpp"

namespace mssc {

bool incumbent_publish(Incumbent& inc, const Centroids& C, double f, double now_seconds) {
    if (inc.initialized && !(f < inc.best_f)) return false;
    inc.centroids = C;
    inc.initialized = true;
    inc.best_f = f;
    inc.updated_at_seconds = now_seconds;
    return true;
}

namespace {

struct Proposal {
    Centroids centroids{0, 0};
    double f = 0.0;
    bool degenerate = false;
    bool active = false;
};

struct WorkerState {
    std::mt19937_64 rng;
    std::vector<std::size_t> pool;
    Incumbent incumbent;  // private; unused once the worker shares
    std::size_t budget = 0;
    std::size_t done = 0;
    std::size_t switch_at = 0;
    bool shares = false;
    bool degenerate = false;
};

Dataset draw_sample(const Dataset& X, std::size_t s, std::vector<std::size_t>& pool,
                    std::mt19937_64& rng) {
    for (std::size_t i = 0; i < s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    Dataset S;
    S.m = s;
    S.n = X.n;
    S.values.resize(s * X.n);
    for (std::size_t i = 0; i < s; ++i) {
        const double* src = X.values.data() + pool[i] * X.n;
        std::copy(src, src + X.n, S.values.begin() + static_cast<std::ptrdiff_t>(i * X.n));
    }
    return S;
}

Proposal compute_proposal(const Dataset& X, std::size_t k, std::size_t s, WorkerState& w,
                          const Incumbent& start, DistanceCounter& counter) {
    Dataset S = draw_sample(X, s, w.pool, w.rng);
    Centroids C(0, X.n);
    Proposal out;
    if (!start.initialized) {
        SeedOutcome seeded = kmeans_pp_seed(S, k, w.rng, 3, counter);
        C = std::move(seeded.centroids);
        out.degenerate = seeded.duplicate_fallback;
    } else {
        C = start.centroids;
        AssignOutcome on_sample = assign_points(S, C, counter);
        std::vector<std::size_t> counts(k, 0);
        for (std::uint32_t a : on_sample.assignment.labels) ++counts[a];
        std::vector<std::size_t> empties;
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] == 0) empties.push_back(j);
        }
        if (!empties.empty()) {
            Centroids survivors(k - empties.size(), X.n);
            std::size_t row = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if (counts[j] == 0) continue;
                std::copy(C.values.begin() + static_cast<std::ptrdiff_t>(j * X.n),
                          C.values.begin() + static_cast<std::ptrdiff_t>((j + 1) * X.n),
                          survivors.values.begin() + static_cast<std::ptrdiff_t>(row * X.n));
                ++row;
            }
            bool dup = false;
            std::vector<std::size_t> fresh =
                kmeans_pp_extend(S, survivors, empties.size(), w.rng, 3, counter, &dup);
            out.degenerate = dup;
            for (std::size_t e = 0; e < empties.size(); ++e) {
                const double* src = S.values.data() + fresh[e] * X.n;
                std::copy(src, src + X.n,
                          C.values.begin() + static_cast<std::ptrdiff_t>(empties[e] * X.n));
            }
        }
    }
    LloydResult refined = run_lloyd(S, C, StopRule{}, EmptyPolicy::KeepPrevious, counter);
    out.centroids = std::move(refined.result.centroids);
    out.f = refined.result.objective;
    out.active = true;
    return out;
}

}  // namespace

BigMeansResult run_big_means(const Dataset& X, std::size_t k, const BigMeansConfig& cfg,
                             std::uint64_t seed, DistanceCounter& counter) {
    if (cfg.s < 1 || cfg.s > X.m) throw std::invalid_argument("run_big_means: s must be in [1, m]");
    if (k > cfg.s) throw std::invalid_argument("run_big_means: k exceeds sample size");
    if (cfg.workers < 1) throw std::invalid_argument("run_big_means: workers must be positive");
    if (cfg.max_samples == 0 && cfg.time_limit_seconds <= 0.0)
        throw std::invalid_argument("run_big_means: need a sample or time budget");
    if (cfg.hybrid_switch_fraction < 0.0 || cfg.hybrid_switch_fraction > 1.0)
        throw std::invalid_argument("run_big_means: hybrid_switch_fraction must be in [0,1]");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    const std::size_t unlimited = std::numeric_limits<std::size_t>::max();
    std::vector<WorkerState> workers(cfg.workers);
    for (std::size_t w = 0; w < cfg.workers; ++w) {
        WorkerState& ws = workers[w];
        ws.rng = make_rng(derive_seed(seed, w));
        ws.pool.resize(X.m);
        for (std::size_t i = 0; i < X.m; ++i) ws.pool[i] = i;
        if (cfg.max_samples == 0) {
            ws.budget = unlimited;
        } else {
            ws.budget = cfg.max_samples / cfg.workers +
                        (w < cfg.max_samples % cfg.workers ? 1 : 0);
        }
        switch (cfg.mode) {
            case BigMeansMode::Competitive:
                ws.shares = false;
                ws.switch_at = unlimited;
                break;
            case BigMeansMode::Collective:
                ws.shares = true;
                ws.switch_at = 0;
                break;
            case BigMeansMode::Hybrid:
                ws.switch_at = ws.budget == unlimited
                                   ? unlimited
                                   : static_cast<std::size_t>(
                                         cfg.hybrid_switch_fraction *
                                         static_cast<double>(ws.budget));
                ws.shares = ws.switch_at == 0;
                break;
        }
    }

    Incumbent shared;
    BigMeansResult out;
    double global_best = std::numeric_limits<double>::infinity();
    bool degenerate = false;

    // Lockstep rounds: every worker with budget left computes one sample
    // proposal against its round-start view, then proposals merge in worker
    // order. This keeps the shared incumbent race-free and the whole run
    // reproducible for a fixed (seed, workers, mode).
    for (;;) {
        bool any_active = false;
        for (const WorkerState& w : workers) any_active |= w.done < w.budget;
        if (!any_active) break;
        if (cfg.time_limit_seconds > 0.0 && elapsed() >= cfg.time_limit_seconds) break;

        const Incumbent shared_view = shared;
        std::vector<Proposal> proposals(cfg.workers);
        std::vector<std::thread> threads;
        threads.reserve(cfg.workers);
        for (std::size_t w = 0; w < cfg.workers; ++w) {
            if (workers[w].done >= workers[w].budget) continue;
            threads.emplace_back([&, w] {
                WorkerState& ws = workers[w];
                const Incumbent& start = ws.shares ? shared_view : ws.incumbent;
                proposals[w] = compute_proposal(X, k, cfg.s, ws, start, counter);
            });
        }
        for (std::thread& t : threads) t.join();

        for (std::size_t w = 0; w < cfg.workers; ++w) {
            if (!proposals[w].active) continue;
            WorkerState& ws = workers[w];
            degenerate |= proposals[w].degenerate;
            Incumbent& target = ws.shares ? shared : ws.incumbent;
            incumbent_publish(target, proposals[w].centroids, proposals[w].f, elapsed());
            if (target.best_f < global_best) {
                global_best = target.best_f;
                out.incumbent_history.push_back(global_best);
            }
            ++ws.done;
            ++out.samples_drawn;
            if (!ws.shares && ws.done >= ws.switch_at) {
                // joining the shared incumbent: contribute the private best,
                // then track the global state from here on
                if (ws.incumbent.initialized) {
                    incumbent_publish(shared, ws.incumbent.centroids, ws.incumbent.best_f,
                                      ws.incumbent.updated_at_seconds);
                }
                ws.shares = true;
            }
        }
    }

    const Incumbent* best = shared.initialized ? &shared : nullptr;
    for (const WorkerState& w : workers) {
        if (w.incumbent.initialized && (!best || w.incumbent.best_f < best->best_f)) {
            best = &w.incumbent;
        }
    }
    if (!best) throw std::runtime_error("run_big_means: no sample was processed within budget");

    AssignOutcome final_pass = assign_points(X, best->centroids, counter);
    out.result.centroids = best->centroids;
    out.result.assignment = std::move(final_pass.assignment);
    out.result.objective = final_pass.objective;
    out.result.elapsed_seconds = best->updated_at_seconds;
    out.result.n_d = counter.count() - nd0;
    out.result.n_s = out.samples_drawn * cfg.s;
    out.result.degenerate = degenerate;
    return out;
}

}  // namespace mssc
