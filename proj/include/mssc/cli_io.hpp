#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "mssc/bench.hpp"
#include "mssc/core.hpp"

namespace mssc {

/// Parse delimiter-separated numeric text (comma or whitespace, sniffed from
/// the first data line). Ragged or non-finite rows abort with a message
/// naming the line (and column for bad values).
Dataset load_dataset(const std::string& path, bool skip_header = false);
Dataset parse_dataset(std::istream& in, const std::string& origin, bool skip_header = false);

/// Write rows with enough digits that load_dataset round-trips bit-exactly.
void save_dataset(const Dataset& X, const std::string& path);

/// Per-column (x - min) / (max - min); constant columns map to 0.
Dataset minmax_normalize(const Dataset& X);

struct AlgorithmSpec {
    std::string name;                       ///< factory key, e.g. "kmeanspp", "bigmeans"
    std::map<std::string, double> params;   ///< numeric parameters
    std::string mode;                       ///< big-means only: competitive/collective/hybrid
};

/// Bind a spec to a runnable (dataset, k, seed) -> result closure; throws on
/// unknown names or invalid parameter sets (fail-fast, before any run).
AlgorithmFn make_algorithm(const AlgorithmSpec& spec);

struct BenchConfig {
    struct DatasetRef {
        std::string name;
        std::string path;
        bool normalize = false;
        bool skip_header = false;
    };
    std::vector<DatasetRef> datasets;
    std::vector<AlgorithmSpec> algorithms;
    std::vector<std::size_t> ks;
    std::size_t n_exec = 1;
    std::uint64_t base_seed = 0;
    std::string baselines_path;          ///< empty means pure best-found mode
    bool best_found = true;              ///< allow runs without a published f*
    std::string output_json;
    std::string output_markdown;
    std::size_t core_budget = 1;
};

/// JSON configuration; validates structure, dataset file existence, k list,
/// and every algorithm spec before returning.
BenchConfig load_bench_config(const std::string& path);

}  // namespace mssc
