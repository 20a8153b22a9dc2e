#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mssc/cli_io.hpp"
#include "mssc/rng.hpp"
#include "oracle.hpp"

using namespace mssc;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents) : path(name) {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("comma rows parse into a 2x2 dataset") {
    std::istringstream in("0,0\n2,0\n");
    const Dataset X = parse_dataset(in, "inline");
    CHECK(X.m == 2);
    CHECK(X.n == 2);
    CHECK(X.values == std::vector<double>{0, 0, 2, 0});
}

TEST_CASE("whitespace delimiters are sniffed from the first data line") {
    std::istringstream in("1 2 3\n4\t5 6\n");
    const Dataset X = parse_dataset(in, "inline");
    CHECK(X.m == 2);
    CHECK(X.n == 3);
    CHECK(X.values == std::vector<double>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("blank lines are skipped, headers only on request") {
    std::istringstream in("\nx,y\n1,2\n");
    const Dataset X = parse_dataset(in, "inline", true);
    CHECK(X.m == 1);
    CHECK(X.values == std::vector<double>{1, 2});

    std::istringstream unskipped("x,y\n1,2\n");
    CHECK_THROWS_AS(parse_dataset(unskipped, "inline"), std::runtime_error);
}

TEST_CASE("errors name the offending line and column") {
    std::istringstream ragged("1,2\n3\n");
    CHECK_THROWS_WITH_AS(parse_dataset(ragged, "inline"),
                         "inline: line 2: expected 2 values, got 1", std::runtime_error);

    std::istringstream junk("1,2\n3,4x\n");
    CHECK_THROWS_WITH_AS(parse_dataset(junk, "inline"),
                         "inline: line 2: column 2: trailing junk in '4x'", std::runtime_error);

    std::istringstream word("1,abc\n");
    CHECK_THROWS_WITH_AS(parse_dataset(word, "inline"),
                         "inline: line 1: column 2: not a number: 'abc'", std::runtime_error);

    std::istringstream inf("1,inf\n");
    CHECK_THROWS_WITH_AS(parse_dataset(inf, "inline"), "inline: line 1: column 2: non-finite value",
                         std::runtime_error);

    std::istringstream empty("\n  \n");
    CHECK_THROWS_WITH_AS(parse_dataset(empty, "inline"), "inline: no data rows",
                         std::runtime_error);
}

TEST_CASE("save/load round-trips bit-exactly") {
    std::mt19937_64 rng(3);
    const Dataset X = oracle::random_instance(rng, 25, 4);
    const std::string path = "roundtrip_test.csv";
    save_dataset(X, path);
    const Dataset Y = load_dataset(path);
    std::remove(path.c_str());
    CHECK(Y.m == X.m);
    CHECK(Y.n == X.n);
    CHECK(Y.values == X.values);
}

TEST_CASE("min-max normalization maps columns to [0, 1], constants to 0") {
    const Dataset X = Dataset::from_rows(3, {{0, 5, 7}, {10, 5, 9}, {5, 5, 8}});
    const Dataset N = minmax_normalize(X);
    CHECK(N.values == std::vector<double>{0, 0, 0, 1, 0, 1, 0.5, 0, 0.5});
    // idempotence: already-normalized data is unchanged
    CHECK(minmax_normalize(N).values == N.values);
}

TEST_CASE("the factory resolves every catalog name") {
    const Dataset X = Dataset::from_rows(1, {{0}, {1}, {2}, {3}, {10}, {11}, {12}, {13}});
    std::vector<AlgorithmSpec> specs = {
        {"kmeanspp", {}, ""},
        {"kmeans", {}, ""},
        {"multistart", {{"restarts", 3}}, ""},
        {"ikmeans", {}, ""},
        {"minibatch", {{"batch_size", 4}, {"iterations", 5}}, ""},
        {"online", {}, ""},
        {"bigmeans", {{"s", 4}, {"samples", 3}}, "hybrid"},
        {"bdcsm", {{"p", 4}}, ""},
        {"lwcoreset", {{"s", 6}}, ""},
        {"cure", {{"s", 8}, {"c", 2}}, ""},
        {"cludatase", {{"s", 8}, {"eps", 2.0}, {"min_pts", 2}}, ""},
    };
    for (const AlgorithmSpec& spec : specs) {
        CAPTURE(spec.name);
        const AlgorithmFn fn = make_algorithm(spec);
        DistanceCounter counter;
        const ClusteringResult r = fn(X, 2, 7, counter);
        CHECK(r.centroids.values.size() == 2);
        CHECK(std::isfinite(r.objective));
        CHECK(r.objective >= 0.0);
    }
}

TEST_CASE("factory failures are immediate, before any data is touched") {
    CHECK_THROWS_AS(make_algorithm({"nope", {}, ""}), std::invalid_argument);
    CHECK_THROWS_AS(make_algorithm({"minibatch", {}, ""}), std::invalid_argument);
    CHECK_THROWS_AS(make_algorithm({"minibatch", {{"batch_size", 2.5}, {"iterations", 3}}, ""}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_algorithm({"bigmeans", {{"s", 4}}, ""}), std::invalid_argument);
    CHECK_THROWS_AS(make_algorithm({"bigmeans", {{"s", 4}, {"samples", 2}}, "sideways"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_algorithm({"cludatase", {{"s", 4}, {"eps", -1.0}, {"min_pts", 2}}, ""}),
                    std::invalid_argument);
}

TEST_CASE("factory runs are reproducible for a fixed seed") {
    const Dataset X = Dataset::from_rows(2, {{0, 0}, {1, 0}, {9, 0}, {10, 0}});
    const AlgorithmFn fn = make_algorithm({"kmeanspp", {}, ""});
    DistanceCounter c1, c2;
    const ClusteringResult a = fn(X, 2, 11, c1);
    const ClusteringResult b = fn(X, 2, 11, c2);
    CHECK(a.objective == b.objective);
    CHECK(a.centroids.values == b.centroids.values);
    CHECK(a.n_d == b.n_d);
    CHECK(a.n_d == c1.count());
}

TEST_CASE("bench config loads and validates") {
    TempFile data("bench_cfg_data_test.csv", "0,0\n1,0\n9,0\n10,0\n");
    TempFile cfg("bench_cfg_test.json", R"({
        "datasets": [{"name": "toy", "path": "bench_cfg_data_test.csv"}],
        "algorithms": [{"name": "kmeanspp"}, {"name": "bdcsm", "params": {"p": 2}}],
        "k": [2],
        "n_exec": 3,
        "seed": 5,
        "core_budget": 2
    })");
    const BenchConfig c = load_bench_config(cfg.path);
    CHECK(c.datasets.size() == 1);
    CHECK(c.datasets[0].name == "toy");
    CHECK(c.algorithms.size() == 2);
    CHECK(c.ks == std::vector<std::size_t>{2});
    CHECK(c.n_exec == 3);
    CHECK(c.base_seed == 5);
    CHECK(c.core_budget == 2);
    CHECK(c.best_found);
}

TEST_CASE("bench config failures are fail-fast") {
    TempFile data("bench_cfg_data_test2.csv", "0,0\n1,0\n");

    TempFile missing("bench_cfg_missing_test.json", R"({
        "datasets": [{"name": "toy", "path": "no_such_file.csv"}],
        "algorithms": [{"name": "kmeanspp"}], "k": [2]
    })");
    CHECK_THROWS_AS(load_bench_config(missing.path), std::runtime_error);

    TempFile badalgo("bench_cfg_badalgo_test.json", R"({
        "datasets": [{"name": "toy", "path": "bench_cfg_data_test2.csv"}],
        "algorithms": [{"name": "minibatch"}], "k": [2]
    })");
    CHECK_THROWS_AS(load_bench_config(badalgo.path), std::invalid_argument);

    TempFile strict("bench_cfg_strict_test.json", R"({
        "datasets": [{"name": "toy", "path": "bench_cfg_data_test2.csv"}],
        "algorithms": [{"name": "kmeanspp"}], "k": [2], "best_found": false
    })");
    CHECK_THROWS_AS(load_bench_config(strict.path), std::runtime_error);

    TempFile badjson("bench_cfg_badjson_test.json", "{not json");
    CHECK_THROWS_AS(load_bench_config(badjson.path), std::runtime_error);
}
