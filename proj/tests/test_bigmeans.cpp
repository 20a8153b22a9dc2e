#include <doctest.h>

#include <cmath>

#include "mssc/bigmeans.hpp"
#include "oracle.hpp"

using namespace mssc;

namespace {

BigMeansConfig base_config(std::size_t s, std::size_t samples, std::size_t workers,
                           BigMeansMode mode) {
    BigMeansConfig cfg;
    cfg.s = s;
    cfg.max_samples = samples;
    cfg.workers = workers;
    cfg.mode = mode;
    return cfg;
}

}  // namespace

TEST_CASE("incumbent_publish keeps the best (CAS rule)") {
    Incumbent inc;
    Centroids C(1, 1);
    C.values = {1.0};
    CHECK(incumbent_publish(inc, C, 5.0, 0.1));
    CHECK(inc.best_f == 5.0);
    CHECK_FALSE(incumbent_publish(inc, C, 7.0, 0.2));
    CHECK(inc.best_f == 5.0);
    CHECK(inc.updated_at_seconds == 0.1);
    CHECK(incumbent_publish(inc, C, 4.0, 0.3));
    CHECK(inc.best_f == 4.0);
}

TEST_CASE("s = m makes the sample objective equal the full objective") {
    std::mt19937_64 rng(1);
    const Dataset X = oracle::random_instance(rng, 30, 2);
    DistanceCounter counter;
    const BigMeansResult r =
        run_big_means(X, 3, base_config(X.m, 1, 1, BigMeansMode::Competitive), 7, counter);
    CHECK(r.samples_drawn == 1);
    CHECK(r.incumbent_history.size() == 1);
    // the single sample is a permutation of X, so the accepted sample
    // objective and the final full-dataset objective must agree
    CHECK(r.result.objective ==
          doctest::Approx(r.incumbent_history.front()).epsilon(1e-9));
    CHECK(r.result.n_s == X.m);
}

TEST_CASE("two far singletons reach f = 0 within a few samples") {
    const Dataset X = Dataset::from_rows(2, {{0, 0}, {200, 200}});
    DistanceCounter counter;
    const BigMeansResult r =
        run_big_means(X, 2, base_config(2, 5, 1, BigMeansMode::Competitive), 3, counter);
    CHECK(r.result.objective == doctest::Approx(0.0));
}

TEST_CASE("workers=1 collapses the three modes onto one result") {
    std::mt19937_64 rng(2);
    const Dataset X = oracle::blob_instance(rng, 3, 30, 2);
    std::vector<Centroids> outputs;
    for (BigMeansMode mode :
         {BigMeansMode::Competitive, BigMeansMode::Collective, BigMeansMode::Hybrid}) {
        DistanceCounter counter;
        outputs.push_back(run_big_means(X, 3, base_config(20, 8, 1, mode), 5, counter)
                              .result.centroids);
    }
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);
}

TEST_CASE("fixed (seed, workers, mode) reproduces the run exactly") {
    std::mt19937_64 rng(3);
    const Dataset X = oracle::blob_instance(rng, 3, 25, 2);
    for (BigMeansMode mode :
         {BigMeansMode::Competitive, BigMeansMode::Collective, BigMeansMode::Hybrid}) {
        DistanceCounter ca, cb;
        const BigMeansResult a =
            run_big_means(X, 3, base_config(25, 9, 4, mode), 11, ca);
        const BigMeansResult b =
            run_big_means(X, 3, base_config(25, 9, 4, mode), 11, cb);
        CHECK(a.result.centroids == b.result.centroids);
        CHECK(a.result.objective == b.result.objective);
        CHECK(a.incumbent_history == b.incumbent_history);
        CHECK(ca.count() == cb.count());
    }
}

TEST_CASE("incumbent history is strictly decreasing") {
    std::mt19937_64 rng(4);
    const Dataset X = oracle::random_instance(rng, 120, 2);
    DistanceCounter counter;
    const BigMeansResult r =
        run_big_means(X, 4, base_config(40, 30, 2, BigMeansMode::Hybrid), 13, counter);
    REQUIRE(!r.incumbent_history.empty());
    for (std::size_t i = 1; i < r.incumbent_history.size(); ++i) {
        CHECK(r.incumbent_history[i] < r.incumbent_history[i - 1]);
    }
}

TEST_CASE("monte-carlo: four collective workers beat one in expectation") {
    std::mt19937_64 rng(5);
    const Dataset X = oracle::blob_instance(rng, 4, 25, 2, 2.0, 30.0);
    const int seeds = 30;
    double mean1 = 0.0, mean4 = 0.0;
    std::vector<double> diffs(seeds);
    for (int s = 0; s < seeds; ++s) {
        DistanceCounter c1, c4;
        const double f1 = run_big_means(X, 4, base_config(30, 3, 1, BigMeansMode::Collective),
                                        static_cast<std::uint64_t>(s), c1)
                              .result.objective;
        const double f4 = run_big_means(X, 4, base_config(30, 12, 4, BigMeansMode::Collective),
                                        static_cast<std::uint64_t>(s), c4)
                              .result.objective;
        mean1 += f1;
        mean4 += f4;
        diffs[s] = f4 - f1;
    }
    mean1 /= seeds;
    mean4 /= seeds;
    double var = 0.0;
    for (double d : diffs) var += (d - (mean4 - mean1)) * (d - (mean4 - mean1));
    const double se = std::sqrt(var / seeds / seeds);
    CHECK(mean4 <= mean1 + 2.0 * se);
}

TEST_CASE("argument checks") {
    const Dataset X = Dataset::from_rows(2, {{0, 0}, {1, 1}, {2, 2}});
    DistanceCounter counter;
    CHECK_THROWS_AS(
        run_big_means(X, 3, base_config(2, 1, 1, BigMeansMode::Competitive), 0, counter),
        std::invalid_argument);  // k > s
    BigMeansConfig no_budget = base_config(2, 0, 1, BigMeansMode::Competitive);
    CHECK_THROWS_AS(run_big_means(X, 2, no_budget, 0, counter), std::invalid_argument);
}
