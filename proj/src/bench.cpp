#include "mssc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mssc/rng.hpp"

namespace mssc {

namespace {

struct OrderStats {
    double min, med, max;
};

OrderStats order_stats(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    // lower middle for even lengths: deterministic, never averages two runs
    return {values.front(), values[(values.size() - 1) / 2], values.back()};
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void BaselineTable::set(const std::string& dataset, std::size_t k, double f_star,
                        const std::string& provenance) {
    if (!(f_star > 0.0)) throw std::invalid_argument("BaselineTable: f* must be positive");
    entries_[{dataset, k}] = BaselineEntry{f_star, provenance};
}

std::optional<BaselineEntry> BaselineTable::lookup(const std::string& dataset,
                                                   std::size_t k) const {
    const auto it = entries_.find({dataset, k});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

BaselineTable BaselineTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("BaselineTable: cannot open " + path);
    BaselineTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string dataset, k_text, f_text, provenance;
        if (!std::getline(row, dataset, ',') || !std::getline(row, k_text, ',') ||
            !std::getline(row, f_text, ',') || !std::getline(row, provenance)) {
            throw std::runtime_error("BaselineTable: malformed line " + std::to_string(line_no) +
                                     " in " + path);
        }
        table.set(dataset, std::stoul(k_text), std::stod(f_text), provenance);
    }
    return table;
}

void BaselineTable::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("BaselineTable: cannot write " + path);
    for (const auto& [key, entry] : entries_) {
        out << key.first << ',' << key.second << ',' << format_double(entry.f_star) << ','
            << entry.provenance << '\n';
    }
}

SeriesResult run_series(const AlgorithmFn& algorithm, const std::string& algorithm_name,
                        const Dataset& X, const std::string& dataset_name, std::size_t k,
                        std::size_t n_exec, std::uint64_t base_seed, double f_star,
                        std::size_t workers, bool warmup) {
    if (n_exec < 1) throw std::invalid_argument("run_series: n_exec must be positive");
    if (workers < 1) throw std::invalid_argument("run_series: workers must be positive");
    if (!(f_star > 0.0)) throw std::invalid_argument("run_series: f* must be positive");

    if (warmup) {
        DistanceCounter scratch;
        algorithm(X, k, derive_seed(base_seed, n_exec), scratch);
    }

    SeriesResult out;
    out.records.resize(n_exec);
    std::atomic<std::size_t> next{0};
    const std::size_t pool = std::min(workers, n_exec);
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_exec) return;
            const std::uint64_t seed = derive_seed(base_seed, i);
            DistanceCounter counter;
            const ClusteringResult r = algorithm(X, k, seed, counter);
            RunRecord& rec = out.records[i];
            rec.algorithm = algorithm_name;
            rec.dataset = dataset_name;
            rec.k = k;
            rec.seed = seed;
            rec.objective = r.objective;
            rec.epsilon = relative_error(r.objective, f_star);
            rec.elapsed_seconds = r.elapsed_seconds;
            rec.n_d = r.n_d;
            rec.n_s = r.n_s;
        }
    };
    if (pool == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(work);
        for (std::thread& t : threads) t.join();
    }

    std::vector<double> eps, times;
    eps.reserve(n_exec);
    times.reserve(n_exec);
    for (const RunRecord& r : out.records) {
        eps.push_back(r.epsilon);
        times.push_back(r.elapsed_seconds);
    }
    const OrderStats e = order_stats(std::move(eps));
    const OrderStats t = order_stats(std::move(times));
    out.summary = SeriesSummary{algorithm_name, dataset_name, k,     n_exec, e.min, e.med,
                                e.max,          t.min,        t.med, t.max};
    return out;
}

SeriesSummary summarize_series(const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize_series: empty series");
    std::vector<double> eps, times;
    eps.reserve(records.size());
    times.reserve(records.size());
    for (const RunRecord& r : records) {
        if (r.algorithm != records.front().algorithm || r.dataset != records.front().dataset ||
            r.k != records.front().k) {
            throw std::invalid_argument("summarize_series: mixed series cells");
        }
        eps.push_back(r.epsilon);
        times.push_back(r.elapsed_seconds);
    }
    const OrderStats e = order_stats(std::move(eps));
    const OrderStats t = order_stats(std::move(times));
    return SeriesSummary{records.front().algorithm,
                         records.front().dataset,
                         records.front().k,
                         records.size(),
                         e.min,
                         e.med,
                         e.max,
                         t.min,
                         t.med,
                         t.max};
}

std::map<std::string, std::size_t> success_counts(const std::vector<SeriesSummary>& summaries) {
    if (summaries.empty()) return {};
    const std::string& dataset = summaries.front().dataset;
    std::map<std::string, std::map<std::size_t, double>> medians;  // algorithm -> k -> med eps
    std::set<std::size_t> ks;
    for (const SeriesSummary& s : summaries) {
        if (s.dataset != dataset)
            throw std::invalid_argument("success_counts: mixed datasets in one grid");
        if (!medians[s.algorithm].emplace(s.k, s.eps_med).second)
            throw std::invalid_argument("success_counts: duplicate (algorithm, k) cell");
        ks.insert(s.k);
    }
    for (const auto& [name, row] : medians) {
        if (row.size() != ks.size())
            throw std::invalid_argument("success_counts: algorithm " + name +
                                        " missing k values");
    }

    std::map<std::string, std::size_t> succ;
    for (const auto& [name, row] : medians) succ[name] = 0;
    constexpr double tol = 1e-9;
    for (std::size_t k : ks) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [name, row] : medians) best = std::min(best, row.at(k));
        for (const auto& [name, row] : medians) {
            if (row.at(k) <= best + tol) ++succ[name];
        }
    }
    return succ;
}

BaselineTable update_best_found(std::vector<RunRecord>& records, BaselineTable table) {
    for (const RunRecord& r : records) {
        const std::optional<BaselineEntry> entry = table.lookup(r.dataset, r.k);
        if (!entry || r.objective < entry->f_star) {
            table.set(r.dataset, r.k, r.objective, "best-found-here");
        }
    }
    for (RunRecord& r : records) {
        const std::optional<BaselineEntry> entry = table.lookup(r.dataset, r.k);
        if (entry) r.epsilon = relative_error(r.objective, entry->f_star);
    }
    return table;
}

std::string results_to_json(const std::vector<RunRecord>& records,
                            const std::vector<SeriesSummary>& summaries, bool include_timing) {
    nlohmann::json doc;
    doc["records"] = nlohmann::json::array();
    for (const RunRecord& r : records) {
        doc["records"].push_back({{"algorithm", r.algorithm},
                                  {"dataset", r.dataset},
                                  {"k", r.k},
                                  {"seed", r.seed},
                                  {"f", r.objective},
                                  {"epsilon", r.epsilon},
                                  {"t", include_timing ? r.elapsed_seconds : 0.0},
                                  {"n_d", r.n_d},
                                  {"n_s", r.n_s}});
    }
    doc["summaries"] = nlohmann::json::array();
    for (const SeriesSummary& s : summaries) {
        doc["summaries"].push_back({{"algorithm", s.algorithm},
                                    {"dataset", s.dataset},
                                    {"k", s.k},
                                    {"n_exec", s.n_exec},
                                    {"eps_min", s.eps_min},
                                    {"eps_med", s.eps_med},
                                    {"eps_max", s.eps_max},
                                    {"t_min", include_timing ? s.t_min : 0.0},
                                    {"t_med", include_timing ? s.t_med : 0.0},
                                    {"t_max", include_timing ? s.t_max : 0.0}});
    }
    return doc.dump(2);
}

std::string results_to_markdown(const std::vector<SeriesSummary>& summaries) {
    std::ostringstream os;
    os.precision(6);
    std::set<std::string> datasets;
    for (const SeriesSummary& s : summaries) datasets.insert(s.dataset);
    for (const std::string& dataset : datasets) {
        os << "## " << dataset << "\n\n";
        os << "| Algorithm | k | eps min | eps median | eps max | t min | t median | t max |\n";
        os << "|---|---|---|---|---|---|---|---|\n";
        for (const SeriesSummary& s : summaries) {
            if (s.dataset != dataset) continue;
            os << "| " << s.algorithm << " | " << s.k << " | " << s.eps_min << " | " << s.eps_med
               << " | " << s.eps_max << " | " << s.t_min << " | " << s.t_med << " | " << s.t_max
               << " |\n";
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace mssc
