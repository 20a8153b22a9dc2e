#include "mssc/cli_io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mssc/accel.hpp"
#include "mssc/bdcsm.hpp"
#include "mssc/bigmeans.hpp"
#include "mssc/coreset.hpp"
#include "mssc/cure.hpp"
#include "mssc/density.hpp"
#include "mssc/init.hpp"
#include "mssc/lloyd.hpp"
#include "mssc/rng.hpp"
#include "mssc/stream.hpp"

namespace mssc {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line, const std::string& what) {
    throw std::runtime_error(origin + ": line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_row(const std::string& line, bool comma) {
    std::vector<std::string> out;
    if (comma) {
        std::istringstream row(line);
        std::string tok;
        while (std::getline(row, tok, ',')) out.push_back(tok);
    } else {
        std::istringstream row(line);
        std::string tok;
        while (row >> tok) out.push_back(tok);
    }
    return out;
}

}  // namespace

Dataset parse_dataset(std::istream& in, const std::string& origin, bool skip_header) {
    Dataset X;
    std::string line;
    std::size_t line_no = 0;
    bool sniffed = false;
    bool comma = false;
    bool header_pending = skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (!sniffed) {
            comma = line.find(',') != std::string::npos;
            sniffed = true;
        }
        const std::vector<std::string> tokens = split_row(line, comma);
        if (X.n == 0) {
            X.n = tokens.size();
        } else if (tokens.size() != X.n) {
            parse_fail(origin, line_no,
                       "expected " + std::to_string(X.n) + " values, got " +
                           std::to_string(tokens.size()));
        }
        for (std::size_t c = 0; c < tokens.size(); ++c) {
            double v = 0.0;
            std::size_t used = 0;
            try {
                v = std::stod(tokens[c], &used);
            } catch (const std::exception&) {
                parse_fail(origin, line_no,
                           "column " + std::to_string(c + 1) + ": not a number: '" + tokens[c] +
                               "'");
            }
            if (tokens[c].find_first_not_of(" \t", used) != std::string::npos) {
                parse_fail(origin, line_no,
                           "column " + std::to_string(c + 1) + ": trailing junk in '" +
                               tokens[c] + "'");
            }
            if (!std::isfinite(v)) {
                parse_fail(origin, line_no,
                           "column " + std::to_string(c + 1) + ": non-finite value");
            }
            X.values.push_back(v);
        }
        ++X.m;
    }
    if (X.m == 0) throw std::runtime_error(origin + ": no data rows");
    return X;
}

Dataset load_dataset(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return parse_dataset(in, path, skip_header);
}

void save_dataset(const Dataset& X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write");
    out.precision(17);
    for (std::size_t i = 0; i < X.m; ++i) {
        const double* row = X.values.data() + i * X.n;
        for (std::size_t j = 0; j < X.n; ++j) {
            if (j) out << ',';
            out << row[j];
        }
        out << '\n';
    }
}

Dataset minmax_normalize(const Dataset& X) {
    Dataset out = X;
    for (std::size_t j = 0; j < X.n; ++j) {
        double lo = X.values[j];
        double hi = X.values[j];
        for (std::size_t i = 1; i < X.m; ++i) {
            lo = std::min(lo, X.values[i * X.n + j]);
            hi = std::max(hi, X.values[i * X.n + j]);
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < X.m; ++i) {
            double& v = out.values[i * X.n + j];
            v = range > 0.0 ? (v - lo) / range : 0.0;
        }
    }
    return out;
}

namespace {

double need_param(const AlgorithmSpec& spec, const std::string& key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end()) {
        throw std::invalid_argument("algorithm " + spec.name + ": missing parameter '" + key +
                                    "'");
    }
    return it->second;
}

double param_or(const AlgorithmSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

std::size_t as_count(const AlgorithmSpec& spec, const std::string& key, double v) {
    if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw std::invalid_argument("algorithm " + spec.name + ": parameter '" + key +
                                    "' must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

/// Re-stamps wall time and the distance-count delta around a run body.
template <typename Body>
AlgorithmFn timed(Body body) {
    return [body](const Dataset& X, std::size_t k, std::uint64_t seed, DistanceCounter& counter) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t nd0 = counter.count();
        ClusteringResult r = body(X, k, seed, counter);
        r.n_d = counter.count() - nd0;
        r.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };
}

}  // namespace

AlgorithmFn make_algorithm(const AlgorithmSpec& spec) {
    if (spec.name == "kmeanspp") {
        const int candidates = static_cast<int>(param_or(spec, "candidates", 3));
        if (candidates < 1)
            throw std::invalid_argument("algorithm kmeanspp: candidates must be positive");
        return timed([candidates](const Dataset& X, std::size_t k, std::uint64_t seed,
                                  DistanceCounter& counter) {
            std::mt19937_64 rng = make_rng(seed);
            SeedOutcome seeded = kmeans_pp_seed(X, k, rng, candidates, counter);
            LloydResult refined =
                run_lloyd(X, seeded.centroids, StopRule{}, EmptyPolicy::KeepPrevious, counter);
            refined.result.degenerate |= seeded.duplicate_fallback;
            return std::move(refined.result);
        });
    }
    if (spec.name == "kmeans") {
        return timed([](const Dataset& X, std::size_t k, std::uint64_t seed,
                        DistanceCounter& counter) {
            std::mt19937_64 rng = make_rng(seed);
            Centroids C0 = forgy_seed(X, k, rng);
            return run_lloyd(X, C0, StopRule{}, EmptyPolicy::KeepPrevious, counter).result;
        });
    }
    if (spec.name == "multistart") {
        const std::size_t restarts = as_count(spec, "restarts", param_or(spec, "restarts", 10));
        if (restarts < 1)
            throw std::invalid_argument("algorithm multistart: restarts must be positive");
        return timed([restarts](const Dataset& X, std::size_t k, std::uint64_t seed,
                                DistanceCounter& counter) {
            return multi_start(X, k, restarts, seed, StopRule{}, counter);
        });
    }
    if (spec.name == "ikmeans") {
        const std::size_t period =
            as_count(spec, "recheck_period", param_or(spec, "recheck_period", 5));
        if (period < 1)
            throw std::invalid_argument("algorithm ikmeans: recheck_period must be positive");
        return timed([period](const Dataset& X, std::size_t k, std::uint64_t seed,
                              DistanceCounter& counter) {
            std::mt19937_64 rng = make_rng(seed);
            return run_ikmeans(X, k, rng, StopRule{}, period, counter).result;
        });
    }
    if (spec.name == "minibatch") {
        const std::size_t b = as_count(spec, "batch_size", need_param(spec, "batch_size"));
        const std::size_t T = as_count(spec, "iterations", need_param(spec, "iterations"));
        if (b < 1 || T < 1)
            throw std::invalid_argument(
                "algorithm minibatch: batch_size and iterations must be positive");
        return timed([b, T](const Dataset& X, std::size_t k, std::uint64_t seed,
                            DistanceCounter& counter) {
            std::mt19937_64 rng = make_rng(seed);
            Centroids C0 = forgy_seed(X, k, rng);
            return run_minibatch(X, C0, b, T, rng, counter);
        });
    }
    if (spec.name == "online") {
        return timed([](const Dataset& X, std::size_t k, std::uint64_t /*seed*/,
                        DistanceCounter& counter) { return run_online(X, k, counter); });
    }
    if (spec.name == "bigmeans") {
        BigMeansConfig cfg;
        cfg.s = as_count(spec, "s", need_param(spec, "s"));
        cfg.max_samples = as_count(spec, "samples", param_or(spec, "samples", 0));
        cfg.time_limit_seconds = param_or(spec, "time_limit", 0.0);
        cfg.workers = as_count(spec, "workers", param_or(spec, "workers", 1));
        cfg.hybrid_switch_fraction = param_or(spec, "hybrid_switch_fraction", 0.5);
        if (spec.mode.empty() || spec.mode == "competitive") {
            cfg.mode = BigMeansMode::Competitive;
        } else if (spec.mode == "collective") {
            cfg.mode = BigMeansMode::Collective;
        } else if (spec.mode == "hybrid") {
            cfg.mode = BigMeansMode::Hybrid;
        } else {
            throw std::invalid_argument("algorithm bigmeans: unknown mode '" + spec.mode + "'");
        }
        if (cfg.max_samples == 0 && cfg.time_limit_seconds <= 0.0)
            throw std::invalid_argument("algorithm bigmeans: need samples or time_limit");
        return [cfg](const Dataset& X, std::size_t k, std::uint64_t seed,
                     DistanceCounter& counter) {
            // keeps its own clock: elapsed is the last incumbent update time
            return run_big_means(X, k, cfg, seed, counter).result;
        };
    }
    if (spec.name == "bdcsm") {
        const std::size_t p = as_count(spec, "p", need_param(spec, "p"));
        return timed([p](const Dataset& X, std::size_t k, std::uint64_t seed,
                         DistanceCounter& counter) { return run_bdcsm(X, k, p, seed, counter); });
    }
    if (spec.name == "lwcoreset") {
        const std::size_t s = as_count(spec, "s", need_param(spec, "s"));
        return timed([s](const Dataset& X, std::size_t k, std::uint64_t seed,
                         DistanceCounter& counter) {
            std::mt19937_64 rng = make_rng(seed);
            return run_lw_coreset(X, k, s, rng, counter);
        });
    }
    if (spec.name == "cure") {
        CureParams params;
        params.s = as_count(spec, "s", need_param(spec, "s"));
        params.f = as_count(spec, "f", param_or(spec, "f", 1));
        params.q = as_count(spec, "q", param_or(spec, "q", 1));
        params.c = as_count(spec, "c", param_or(spec, "c", 1));
        params.alpha = param_or(spec, "alpha", 0.5);
        return timed([params](const Dataset& X, std::size_t k, std::uint64_t seed,
                              DistanceCounter& counter) {
            CureParams p = params;
            p.k = k;
            std::mt19937_64 rng = make_rng(seed);
            return run_cure(X, p, rng, counter);
        });
    }
    if (spec.name == "cludatase") {
        const std::size_t s = as_count(spec, "s", need_param(spec, "s"));
        DbscanParams dp;
        dp.eps = need_param(spec, "eps");
        dp.min_pts = as_count(spec, "min_pts", need_param(spec, "min_pts"));
        const std::size_t rounds = as_count(spec, "max_rounds", param_or(spec, "max_rounds", 10));
        if (dp.eps <= 0.0 || dp.min_pts < 1 || rounds < 1)
            throw std::invalid_argument("algorithm cludatase: invalid eps/min_pts/max_rounds");
        return timed([s, dp, rounds](const Dataset& X, std::size_t k, std::uint64_t seed,
                                     DistanceCounter& counter) {
            std::mt19937_64 rng = make_rng(seed);
            return run_cludatase(X, k, s, dp, rng, rounds, counter);
        });
    }
    throw std::invalid_argument("unknown algorithm '" + spec.name + "'");
}

BenchConfig load_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }

    BenchConfig cfg;
    for (const nlohmann::json& d : doc.at("datasets")) {
        BenchConfig::DatasetRef ref;
        ref.name = d.at("name").get<std::string>();
        ref.path = d.at("path").get<std::string>();
        ref.normalize = d.value("normalize", false);
        ref.skip_header = d.value("skip_header", false);
        if (!std::filesystem::exists(ref.path))
            throw std::runtime_error(path + ": dataset file not found: " + ref.path);
        cfg.datasets.push_back(std::move(ref));
    }
    for (const nlohmann::json& a : doc.at("algorithms")) {
        AlgorithmSpec spec;
        spec.name = a.at("name").get<std::string>();
        spec.mode = a.value("mode", std::string{});
        if (a.contains("params")) {
            for (const auto& [key, value] : a.at("params").items()) {
                spec.params[key] = value.get<double>();
            }
        }
        make_algorithm(spec);  // validate now, fail before any run
        cfg.algorithms.push_back(std::move(spec));
    }
    for (const nlohmann::json& k : doc.at("k")) {
        const std::size_t v = k.get<std::size_t>();
        if (v < 1) throw std::runtime_error(path + ": k values must be positive");
        cfg.ks.push_back(v);
    }
    if (cfg.datasets.empty() || cfg.algorithms.empty() || cfg.ks.empty())
        throw std::runtime_error(path + ": datasets, algorithms, and k must be non-empty");
    cfg.n_exec = doc.value("n_exec", 1);
    if (cfg.n_exec < 1) throw std::runtime_error(path + ": n_exec must be positive");
    cfg.base_seed = doc.value("seed", 0);
    cfg.baselines_path = doc.value("baselines", std::string{});
    if (!cfg.baselines_path.empty() && !std::filesystem::exists(cfg.baselines_path))
        throw std::runtime_error(path + ": baselines file not found: " + cfg.baselines_path);
    cfg.best_found = doc.value("best_found", true);
    if (!cfg.best_found && cfg.baselines_path.empty())
        throw std::runtime_error(path + ": strict mode needs a baselines file");
    cfg.output_json = doc.value("output_json", std::string{});
    cfg.output_markdown = doc.value("output_markdown", std::string{});
    cfg.core_budget = doc.value("core_budget", 1);
    if (cfg.core_budget < 1) throw std::runtime_error(path + ": core_budget must be positive");
    return cfg;
}

}  // namespace mssc
