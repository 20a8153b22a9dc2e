#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "mssc/core.hpp"

namespace mssc {

/// One seeded execution's row.
struct RunRecord {
    std::string algorithm;
    std::string dataset;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    double objective = 0.0;
    double epsilon = 0.0;
    double elapsed_seconds = 0.0;
    std::uint64_t n_d = 0;
    std::size_t n_s = 0;
};

/// Min / lower-median / max of epsilon and time over one (algorithm, dataset,
/// k) series.
struct SeriesSummary {
    std::string algorithm;
    std::string dataset;
    std::size_t k = 0;
    std::size_t n_exec = 0;
    double eps_min = 0.0, eps_med = 0.0, eps_max = 0.0;
    double t_min = 0.0, t_med = 0.0, t_max = 0.0;
};

/// Best known objective per (dataset, k) with its provenance.
struct BaselineEntry {
    double f_star = 0.0;
    std::string provenance;  ///< "paper-published" or "best-found-here"
};

class BaselineTable {
  public:
    void set(const std::string& dataset, std::size_t k, double f_star,
             const std::string& provenance);
    std::optional<BaselineEntry> lookup(const std::string& dataset, std::size_t k) const;

    /// CSV lines of "dataset,k,f_star,provenance".
    static BaselineTable load_csv(const std::string& path);
    void save_csv(const std::string& path) const;

    const std::map<std::pair<std::string, std::size_t>, BaselineEntry>& entries() const {
        return entries_;
    }

  private:
    std::map<std::pair<std::string, std::size_t>, BaselineEntry> entries_;
};

/// A benchmarked algorithm: fully determined by (data, k, seed).
using AlgorithmFn =
    std::function<ClusteringResult(const Dataset&, std::size_t, std::uint64_t, DistanceCounter&)>;

struct SeriesResult {
    SeriesSummary summary;
    std::vector<RunRecord> records;  ///< in run-index order regardless of completion order
};

/// n_exec seeded runs (seed of run i derived from (base_seed, i)), epsilon
/// against f_star, summarised with the lower-median convention. Runs execute
/// on up to `workers` threads; an optional unrecorded warm-up run precedes
/// the series.
SeriesResult run_series(const AlgorithmFn& algorithm, const std::string& algorithm_name,
                        const Dataset& X, const std::string& dataset_name, std::size_t k,
                        std::size_t n_exec, std::uint64_t base_seed, double f_star,
                        std::size_t workers = 1, bool warmup = false);

/// Order statistics over an already-collected series (all records must share
/// one (algorithm, dataset, k) cell); used to re-summarise after baseline
/// updates.
SeriesSummary summarize_series(const std::vector<RunRecord>& records);

/// #Succ per algorithm over one dataset's (algorithm x k) grid: an algorithm
/// scores at each k where its median epsilon matches the best median within
/// 1e-9 absolute.
std::map<std::string, std::size_t> success_counts(const std::vector<SeriesSummary>& summaries);

/// Lower f* to the best objective observed anywhere in `records` and
/// recompute every epsilon against the updated table.
BaselineTable update_best_found(std::vector<RunRecord>& records, BaselineTable table);

/// Machine output: all records plus summaries as a JSON string. With
/// include_timing = false all wall-clock fields are zeroed so two runs of the
/// same seed compare byte-identically.
std::string results_to_json(const std::vector<RunRecord>& records,
                            const std::vector<SeriesSummary>& summaries,
                            bool include_timing = true);

/// Human output: one Min/Median/Max table per dataset.
std::string results_to_markdown(const std::vector<SeriesSummary>& summaries);

}  // namespace mssc
