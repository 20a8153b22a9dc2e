#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mssc/bench.hpp"
#include "mssc/init.hpp"
#include "mssc/lloyd.hpp"
#include "mssc/rng.hpp"

using namespace mssc;

namespace {

// A deterministic toy "algorithm" whose objective is a pure function of the
// seed, so order statistics are predictable without real clustering noise.
AlgorithmFn seed_scripted(const std::vector<double>& objectives) {
    return [objectives](const Dataset&, std::size_t, std::uint64_t seed,
                        DistanceCounter& counter) {
        ClusteringResult r;
        r.objective = objectives[seed % objectives.size()];
        r.n_d = 7;
        r.n_s = 3;
        counter.add(7);
        return r;
    };
}

AlgorithmFn real_lloyd() {
    return [](const Dataset& X, std::size_t k, std::uint64_t seed, DistanceCounter& counter) {
        std::mt19937_64 rng = make_rng(seed);
        const Centroids C0 = forgy_seed(X, k, rng);
        LloydResult lr = run_lloyd(X, C0, StopRule{}, EmptyPolicy::KeepPrevious, counter);
        return lr.result;
    };
}

RunRecord record(const std::string& algo, const std::string& dataset, std::size_t k,
                 double objective, double epsilon) {
    RunRecord r;
    r.algorithm = algo;
    r.dataset = dataset;
    r.k = k;
    r.objective = objective;
    r.epsilon = epsilon;
    return r;
}

SeriesSummary cell(const std::string& algo, const std::string& dataset, std::size_t k,
                   double eps_med) {
    SeriesSummary s;
    s.algorithm = algo;
    s.dataset = dataset;
    s.k = k;
    s.n_exec = 1;
    s.eps_med = eps_med;
    return s;
}

const Dataset kToy = Dataset::from_rows(1, {{0}, {1}, {10}, {11}});

}  // namespace

TEST_CASE("n_exec = 1 makes min, median, and max coincide") {
    const SeriesResult sr =
        run_series(real_lloyd(), "lloyd", kToy, "toy", 2, 1, 42, 1.0);
    CHECK(sr.records.size() == 1);
    CHECK(sr.summary.eps_min == sr.summary.eps_med);
    CHECK(sr.summary.eps_med == sr.summary.eps_max);
    CHECK(sr.summary.t_min == sr.summary.t_med);
    CHECK(sr.summary.n_exec == 1);
}

TEST_CASE("order statistics over {3, 1, 2} and the lower median over 4") {
    std::vector<RunRecord> recs;
    for (double e : {3.0, 1.0, 2.0}) recs.push_back(record("a", "d", 2, e + 10.0, e));
    SeriesSummary s = summarize_series(recs);
    CHECK(s.eps_min == 1.0);
    CHECK(s.eps_med == 2.0);
    CHECK(s.eps_max == 3.0);

    recs.push_back(record("a", "d", 2, 14.0, 4.0));
    s = summarize_series(recs);
    CHECK(s.eps_med == 2.0);  // lower median of {1, 2, 3, 4}
    CHECK(s.eps_max == 4.0);
}

TEST_CASE("summarize_series rejects mixed cells and empty input") {
    CHECK_THROWS_AS(summarize_series({}), std::invalid_argument);
    std::vector<RunRecord> recs = {record("a", "d", 2, 1.0, 0.0), record("b", "d", 2, 1.0, 0.0)};
    CHECK_THROWS_AS(summarize_series(recs), std::invalid_argument);
}

TEST_CASE("run_series seeds runs independently of worker count") {
    const SeriesResult serial =
        run_series(real_lloyd(), "lloyd", kToy, "toy", 2, 6, 7, 0.5);
    const SeriesResult parallel =
        run_series(real_lloyd(), "lloyd", kToy, "toy", 2, 6, 7, 0.5, 4);
    REQUIRE(serial.records.size() == 6);
    REQUIRE(parallel.records.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(serial.records[i].seed == parallel.records[i].seed);
        CHECK(serial.records[i].objective == parallel.records[i].objective);
        CHECK(serial.records[i].epsilon == parallel.records[i].epsilon);
        CHECK(serial.records[i].n_d == parallel.records[i].n_d);
    }
    CHECK(serial.summary.eps_med == parallel.summary.eps_med);
}

TEST_CASE("epsilon is the percentage gap against f_star") {
    const SeriesResult sr = run_series(seed_scripted({2.0}), "toy", kToy, "d", 1, 1, 0, 1.6);
    CHECK(sr.records[0].epsilon == doctest::Approx(100.0 * (2.0 - 1.6) / 1.6));
}

TEST_CASE("success counts over a fabricated 2x3 grid") {
    // medians per k:      k=2  k=3  k=5
    //   algorithm a:       1    2    3
    //   algorithm b:       2    1    1
    // best medians:        1    1    1  -> a succeeds once, b twice
    std::vector<SeriesSummary> grid = {cell("a", "d", 2, 1.0), cell("a", "d", 3, 2.0),
                                       cell("a", "d", 5, 3.0), cell("b", "d", 2, 2.0),
                                       cell("b", "d", 3, 1.0), cell("b", "d", 5, 1.0)};
    const std::map<std::string, std::size_t> counts = success_counts(grid);
    CHECK(counts.at("a") == 1);
    CHECK(counts.at("b") == 2);
}

TEST_CASE("success counts share credit on ties within tolerance") {
    std::vector<SeriesSummary> grid = {cell("a", "d", 2, 1.0), cell("b", "d", 2, 1.0 + 1e-12)};
    const std::map<std::string, std::size_t> counts = success_counts(grid);
    CHECK(counts.at("a") == 1);
    CHECK(counts.at("b") == 1);
}

TEST_CASE("success counts reject multi-dataset input and ragged grids") {
    CHECK_THROWS_AS(success_counts({cell("a", "d1", 2, 0.0), cell("a", "d2", 2, 0.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(success_counts({cell("a", "d", 2, 0.0), cell("a", "d", 2, 0.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(success_counts({cell("a", "d", 2, 0.0), cell("a", "d", 3, 0.0),
                                    cell("b", "d", 2, 0.0)}),
                    std::invalid_argument);
}

TEST_CASE("update_best_found lowers f_star and recomputes epsilon") {
    BaselineTable table;
    table.set("d", 2, 4.0, "paper-published");
    std::vector<RunRecord> recs = {record("a", "d", 2, 3.0, 0.0), record("a", "d", 2, 6.0, 0.0),
                                   record("b", "d", 3, 5.0, 0.0)};
    const BaselineTable updated = update_best_found(recs, table);

    const auto d2 = updated.lookup("d", 2);
    REQUIRE(d2.has_value());
    CHECK(d2->f_star == 3.0);  // a run beat the published value
    CHECK(d2->provenance == "best-found-here");
    const auto d3 = updated.lookup("d", 3);
    REQUIRE(d3.has_value());
    CHECK(d3->f_star == 5.0);  // no prior entry, best observed becomes the baseline
    CHECK(d3->provenance == "best-found-here");

    CHECK(recs[0].epsilon == doctest::Approx(0.0));
    CHECK(recs[1].epsilon == doctest::Approx(100.0));
    CHECK(recs[2].epsilon == doctest::Approx(0.0));
}

TEST_CASE("update_best_found keeps published values that still win") {
    BaselineTable table;
    table.set("d", 2, 1.0, "paper-published");
    std::vector<RunRecord> recs = {record("a", "d", 2, 1.5, 0.0)};
    const BaselineTable updated = update_best_found(recs, table);
    const auto e = updated.lookup("d", 2);
    REQUIRE(e.has_value());
    CHECK(e->f_star == 1.0);
    CHECK(e->provenance == "paper-published");
    CHECK(recs[0].epsilon == doctest::Approx(50.0));
}

TEST_CASE("baseline CSV round-trips") {
    BaselineTable table;
    table.set("alpha", 2, 1.25, "paper-published");
    table.set("alpha", 5, 0.5, "best-found-here");
    table.set("beta", 3, 3.75e11, "paper-published");
    const std::string path = "baselines_roundtrip_test.csv";
    table.save_csv(path);
    const BaselineTable loaded = BaselineTable::load_csv(path);
    std::remove(path.c_str());

    REQUIRE(loaded.entries().size() == 3);
    const auto a2 = loaded.lookup("alpha", 2);
    REQUIRE(a2.has_value());
    CHECK(a2->f_star == 1.25);
    CHECK(a2->provenance == "paper-published");
    const auto b3 = loaded.lookup("beta", 3);
    REQUIRE(b3.has_value());
    CHECK(b3->f_star == 3.75e11);
    CHECK_FALSE(loaded.lookup("alpha", 3).has_value());
}

TEST_CASE("JSON output is byte-identical across runs once timing is suppressed") {
    const SeriesResult a = run_series(real_lloyd(), "lloyd", kToy, "toy", 2, 4, 99, 0.5);
    const SeriesResult b = run_series(real_lloyd(), "lloyd", kToy, "toy", 2, 4, 99, 0.5, 2);
    const std::string ja = results_to_json(a.records, {a.summary}, false);
    const std::string jb = results_to_json(b.records, {b.summary}, false);
    CHECK(ja == jb);
    CHECK(ja.find("\"t\": 0.0") != std::string::npos);
}

TEST_CASE("markdown report groups by dataset and carries the medians") {
    std::vector<SeriesSummary> grid = {cell("a", "d1", 2, 1.5), cell("a", "d2", 2, 2.5)};
    const std::string md = results_to_markdown(grid);
    CHECK(md.find("d1") != std::string::npos);
    CHECK(md.find("d2") != std::string::npos);
    CHECK(md.find("1.5") != std::string::npos);
    CHECK(md.find("2.5") != std::string::npos);
    CHECK(md.find("|") != std::string::npos);
}
