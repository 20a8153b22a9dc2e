#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mssc/bench.hpp"
#include "mssc/cli_io.hpp"
#include "mssc/density.hpp"
#include "mssc/lima.hpp"
#include "mssc/rng.hpp"

namespace {

using nlohmann::json;

int fail(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return 1;
}

std::size_t thread_cap(std::size_t requested) {
    if (const char* env = std::getenv("MSSC_THREADS")) {
        const unsigned long v = std::strtoul(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return requested;
}

mssc::AlgorithmSpec parse_spec(const std::string& name, const std::vector<std::string>& kv,
                               const std::string& mode) {
    mssc::AlgorithmSpec spec;
    spec.name = name;
    spec.mode = mode;
    for (const std::string& pair : kv) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--param expects key=value, got '" + pair + "'");
        spec.params[pair.substr(0, eq)] = std::stod(pair.substr(eq + 1));
    }
    return spec;
}

int cmd_run(const std::string& algorithm, const std::string& data_path, std::size_t k,
            std::uint64_t seed, const std::vector<std::string>& params, const std::string& mode,
            std::optional<double> f_star, bool normalize, bool skip_header, bool no_timing) {
    mssc::Dataset X = mssc::load_dataset(data_path, skip_header);
    if (normalize) X = mssc::minmax_normalize(X);

    // density primitives report structure, not an MSSC result
    if (algorithm == "dbscan" || algorithm == "canopy") {
        const mssc::AlgorithmSpec spec = parse_spec(algorithm, params, mode);
        mssc::DistanceCounter counter;
        json out;
        if (algorithm == "dbscan") {
            mssc::DbscanParams dp;
            dp.eps = spec.params.count("eps") ? spec.params.at("eps") : 0.0;
            dp.min_pts = spec.params.count("min_pts")
                             ? static_cast<std::size_t>(spec.params.at("min_pts"))
                             : 1;
            const std::vector<std::int32_t> labels = mssc::dbscan(X, dp, counter);
            std::int32_t clusters = 0;
            std::size_t noise = 0;
            for (std::int32_t l : labels) {
                clusters = std::max(clusters, l + 1);
                noise += l == mssc::kNoise;
            }
            out = {{"labels", labels}, {"clusters", clusters}, {"noise", noise}};
        } else {
            mssc::CanopyThresholds th;
            th.t1 = spec.params.count("t1") ? spec.params.at("t1") : 0.0;
            th.t2 = spec.params.count("t2") ? spec.params.at("t2") : 0.0;
            std::mt19937_64 rng = mssc::make_rng(seed);
            json canopies = json::array();
            for (const mssc::Canopy& c : mssc::canopy(X, th, rng).canopies) {
                canopies.push_back({{"center", c.center}, {"members", c.members}});
            }
            out = {{"canopies", canopies}};
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    const mssc::AlgorithmFn fn = mssc::make_algorithm(parse_spec(algorithm, params, mode));
    mssc::DistanceCounter counter;
    const mssc::ClusteringResult r = fn(X, k, seed, counter);
    json out = {{"algorithm", algorithm},
                {"k", k},
                {"seed", seed},
                {"f", r.objective},
                {"t", no_timing ? 0.0 : r.elapsed_seconds},
                {"n_d", r.n_d},
                {"n_s", r.n_s},
                {"degenerate", r.degenerate}};
    if (f_star) out["epsilon"] = mssc::relative_error(r.objective, *f_star);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_bench(const std::string& config_path, std::size_t threads, bool no_timing) {
    const mssc::BenchConfig cfg = mssc::load_bench_config(config_path);
    const std::size_t budget = thread_cap(threads ? threads : cfg.core_budget);

    mssc::BaselineTable table;
    if (!cfg.baselines_path.empty()) table = mssc::BaselineTable::load_csv(cfg.baselines_path);
    for (const mssc::BenchConfig::DatasetRef& d : cfg.datasets) {
        for (std::size_t k : cfg.ks) {
            if (!table.lookup(d.name, k) && !cfg.best_found) {
                return fail("config", "no baseline for " + d.name + " k=" + std::to_string(k) +
                                          " in strict mode");
            }
        }
    }

    std::vector<std::vector<mssc::RunRecord>> series;
    for (const mssc::BenchConfig::DatasetRef& d : cfg.datasets) {
        mssc::Dataset X = mssc::load_dataset(d.path, d.skip_header);
        if (d.normalize) X = mssc::minmax_normalize(X);
        for (const mssc::AlgorithmSpec& spec : cfg.algorithms) {
            const mssc::AlgorithmFn fn = mssc::make_algorithm(spec);
            std::size_t internal = 1;
            if (spec.name == "bigmeans" && spec.params.count("workers")) {
                internal = static_cast<std::size_t>(spec.params.at("workers"));
            }
            const std::size_t workers = std::max<std::size_t>(1, budget / std::max<std::size_t>(1, internal));
            for (std::size_t k : cfg.ks) {
                const std::optional<mssc::BaselineEntry> base = table.lookup(d.name, k);
                const double f_star = base ? base->f_star : 1.0;  // provisional when best-found
                mssc::SeriesResult sr = mssc::run_series(fn, spec.name, X, d.name, k, cfg.n_exec,
                                                         cfg.base_seed, f_star, workers);
                series.push_back(std::move(sr.records));
            }
        }
    }

    std::vector<mssc::RunRecord> all;
    for (const std::vector<mssc::RunRecord>& s : series) all.insert(all.end(), s.begin(), s.end());
    if (cfg.best_found) {
        table = mssc::update_best_found(all, table);
        std::size_t at = 0;
        for (std::vector<mssc::RunRecord>& s : series) {
            for (mssc::RunRecord& r : s) r = all[at++];
        }
    }
    std::vector<mssc::SeriesSummary> summaries;
    summaries.reserve(series.size());
    for (const std::vector<mssc::RunRecord>& s : series) {
        summaries.push_back(mssc::summarize_series(s));
    }

    const std::string out_json = mssc::results_to_json(all, summaries, !no_timing);
    const std::string out_md = mssc::results_to_markdown(summaries);
    if (!cfg.output_json.empty()) {
        std::ofstream(cfg.output_json) << out_json << '\n';
    } else {
        std::cout << out_json << '\n';
    }
    if (!cfg.output_markdown.empty()) {
        std::ofstream(cfg.output_markdown) << out_md;
    } else {
        std::cout << out_md;
    }
    return 0;
}

int cmd_lima_report(const std::string& results_path, double time_tolerance) {
    std::ifstream in(results_path);
    if (!in) return fail("io", results_path + ": cannot open");
    json doc;
    in >> doc;

    std::vector<std::pair<std::string, mssc::AlgoScore>> scores;
    if (doc.is_object() && doc.contains("summaries")) {
        // aggregate a bench results file: mean median epsilon and time per algorithm
        std::map<std::string, std::pair<double, double>> acc;  // name -> (sum eps, sum t)
        std::map<std::string, std::size_t> cells;
        for (const json& s : doc.at("summaries")) {
            const std::string name = s.at("algorithm").get<std::string>();
            acc[name].first += s.at("eps_med").get<double>();
            acc[name].second += s.at("t_med").get<double>();
            ++cells[name];
        }
        for (const auto& [name, sums] : acc) {
            const double n = static_cast<double>(cells[name]);
            scores.push_back({name, {sums.first / n, sums.second / n, mssc::lima_number(name)}});
        }
    } else {
        for (const json& s : doc) {
            const std::string name = s.at("algorithm").get<std::string>();
            const std::size_t lima =
                s.contains("lima") ? s.at("lima").get<std::size_t>() : mssc::lima_number(name);
            scores.push_back(
                {name, {s.at("accuracy").get<double>(), s.at("time").get<double>(), lima}});
        }
    }
    std::cout << mssc::dominance_matrix_markdown(scores, time_tolerance);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MSSC big-data clustering toolkit"};
    app.require_subcommand(1);

    std::string algorithm, data_path, mode, config_path, results_path, out_path;
    std::vector<std::string> params;
    std::size_t k = 2, threads = 0;
    std::uint64_t seed = 0;
    double f_star = 0.0, time_tolerance = 0.0;
    bool normalize = false, skip_header = false, no_timing = false;

    CLI::App* run = app.add_subcommand("run", "run one algorithm once, JSON result on stdout");
    run->add_option("algorithm", algorithm, "algorithm name")->required();
    run->add_option("--data", data_path, "dataset file")->required();
    run->add_option("--k", k, "number of clusters");
    run->add_option("--seed", seed, "RNG seed");
    run->add_option("--param", params, "algorithm parameter key=value (repeatable)");
    run->add_option("--mode", mode, "bigmeans mode: competitive/collective/hybrid");
    run->add_option("--f-star", f_star, "baseline objective for epsilon");
    run->add_flag("--normalize", normalize, "min-max normalize first");
    run->add_flag("--skip-header", skip_header, "skip the first line");
    run->add_flag("--no-timing", no_timing, "zero wall-clock fields for byte-stable output");

    CLI::App* bench = app.add_subcommand("bench", "run the full benchmark grid from a config");
    bench->add_option("--config", config_path, "JSON config file")->required();
    bench->add_option("--threads", threads, "total core budget override");
    bench->add_flag("--no-timing", no_timing, "zero wall-clock fields for byte-stable output");

    CLI::App* lima = app.add_subcommand("lima-report", "dominance matrix from results");
    lima->add_option("--results", results_path, "bench JSON or score array")->required();
    lima->add_option("--time-tolerance", time_tolerance, "slack for comparable-time readings");

    CLI::App* norm = app.add_subcommand("normalize", "min-max normalize a dataset file");
    norm->add_option("--data", data_path, "input dataset")->required();
    norm->add_option("--out", out_path, "output path")->required();
    norm->add_flag("--skip-header", skip_header, "skip the first line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) {
            std::cerr << nlohmann::json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
        }
        return app.exit(e);
    }

    try {
        if (run->parsed()) {
            return cmd_run(algorithm, data_path, k, seed, params, mode,
                           run->count("--f-star") ? std::optional<double>(f_star) : std::nullopt,
                           normalize, skip_header, no_timing);
        }
        if (bench->parsed()) return cmd_bench(config_path, threads, no_timing);
        if (lima->parsed()) return cmd_lima_report(results_path, time_tolerance);
        if (norm->parsed()) {
            mssc::save_dataset(mssc::minmax_normalize(mssc::load_dataset(data_path, skip_header)),
                               out_path);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        return fail("argument", e.what());
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
    return 0;
}
