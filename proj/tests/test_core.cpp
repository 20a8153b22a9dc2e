#include <doctest.h>

#include <random>

#include "mssc/core.hpp"
#include "oracle.hpp"

using namespace mssc;

TEST_CASE("squared_distance basic values and counting") {
    DistanceCounter counter;
    const Dataset a = Dataset::from_rows(2, {{0, 0}, {3, 4}});
    CHECK(squared_distance(a.row(0), a.row(0), counter) == doctest::Approx(0.0));
    CHECK(squared_distance(a.row(0), a.row(1), counter) == doctest::Approx(25.0));
    const Dataset b = Dataset::from_rows(3, {{1, 1, 1}, {2, 3, 4}});
    CHECK(squared_distance(b.row(0), b.row(1), counter) == doctest::Approx(14.0));
    CHECK(counter.count() == 3);
}

TEST_CASE("squared_distance rejects dimension mismatch") {
    DistanceCounter counter;
    const Dataset a = Dataset::from_rows(2, {{0, 0}});
    const Dataset b = Dataset::from_rows(3, {{0, 0, 0}});
    CHECK_THROWS_AS(squared_distance(a.row(0), b.row(0), counter), std::invalid_argument);
}

TEST_CASE("assign_points maps each point to its nearest centroid") {
    DistanceCounter counter;
    const Dataset X = Dataset::from_rows(2, {{0, 0}, {2, 0}});

    Centroids one(1, 2);
    one.values = {1, 0};
    AssignOutcome r = assign_points(X, one, counter);
    CHECK(r.assignment.labels == std::vector<std::uint32_t>{0, 0});
    CHECK(r.objective == doctest::Approx(2.0));

    Centroids two(2, 2);
    two.values = {0, 0, 2, 0};
    r = assign_points(X, two, counter);
    CHECK(r.assignment.labels == std::vector<std::uint32_t>{0, 1});
    CHECK(r.objective == doctest::Approx(0.0));

    const Dataset Y = Dataset::from_rows(2, {{0, 0}, {1, 0}, {9, 0}});
    Centroids C(2, 2);
    C.values = {0.5, 0, 9, 0};
    r = assign_points(Y, C, counter);
    CHECK(r.assignment.labels == std::vector<std::uint32_t>{0, 0, 1});
    CHECK(r.objective == doctest::Approx(0.5));
}

TEST_CASE("assign_points advances the counter by exactly m*k") {
    DistanceCounter counter;
    std::mt19937_64 rng(7);
    const Dataset X = oracle::random_instance(rng, 9, 3);
    Centroids C(4, 3);
    C.values.assign(X.values.begin(), X.values.begin() + 12);
    assign_points(X, C, counter);
    CHECK(counter.count() == 9 * 4);
}

TEST_CASE("assign_points rejects empty dataset") {
    DistanceCounter counter;
    Dataset X;
    X.n = 2;
    Centroids C(1, 2);
    CHECK_THROWS_AS(assign_points(X, C, counter), std::invalid_argument);
}

TEST_CASE("update_centroids computes means and preserves empty clusters") {
    const Dataset X = Dataset::from_rows(2, {{0, 0}, {2, 0}});
    Assignment A{{0, 0}};

    Centroids prior1(1, 2);
    prior1.values = {5, 5};
    UpdateOutcome r = update_centroids(X, A, prior1);
    CHECK(r.centroids.values == std::vector<double>{1, 0});
    CHECK(r.empty_flags == std::vector<bool>{false});

    Centroids prior2(2, 2);
    prior2.values = {5, 5, 7, 7};
    r = update_centroids(X, A, prior2);
    CHECK(r.centroids.values == std::vector<double>{1, 0, 7, 7});
    CHECK(r.empty_flags == std::vector<bool>{false, true});

    const Dataset Y = Dataset::from_rows(2, {{1, 1}, {3, 3}, {10, 0}});
    Assignment B{{0, 0, 1}};
    Centroids prior3(2, 2);
    prior3.values = {0, 0, 0, 0};
    r = update_centroids(Y, B, prior3);
    CHECK(r.centroids.values == std::vector<double>{2, 2, 10, 0});
}

TEST_CASE("relative_error matches the percent formula, negatives allowed") {
    CHECK(relative_error(10.0, 10.0) == doctest::Approx(0.0));
    CHECK(relative_error(1.01 * 42.0, 42.0) == doctest::Approx(1.0));
    CHECK(relative_error(0.995 * 42.0, 42.0) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(relative_error(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(relative_error(1.0, -3.0), std::invalid_argument);
}

TEST_CASE("one assignment/update round never increases the objective") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const Dataset X = oracle::random_instance(rng, 20, 2);
        Centroids C(3, 2);
        C.values.assign(X.values.begin(), X.values.begin() + 6);
        DistanceCounter counter;
        const AssignOutcome before = assign_points(X, C, counter);
        const UpdateOutcome updated = update_centroids(X, before.assignment, C);
        const AssignOutcome after = assign_points(X, updated.centroids, counter);
        CHECK(after.objective <= before.objective + 1e-9);
    }
}

TEST_CASE("brute-force optimum lower-bounds any centroid placement") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const Dataset X = oracle::random_instance(rng, 8, 2);
        const double opt = oracle::brute_force_opt(X, 2);
        Centroids C(2, 2);
        C.values.assign(X.values.begin(), X.values.begin() + 4);
        DistanceCounter counter;
        CHECK(assign_points(X, C, counter).objective >= opt - 1e-9);
    }
}

TEST_CASE("assignment is deterministic with ties to the lowest index") {
    const Dataset X = Dataset::from_rows(2, {{1, 0}});
    Centroids C(2, 2);
    C.values = {0, 0, 2, 0};  // equidistant
    DistanceCounter counter;
    const AssignOutcome a = assign_points(X, C, counter);
    const AssignOutcome b = assign_points(X, C, counter);
    CHECK(a.assignment.labels == std::vector<std::uint32_t>{0});
    CHECK(a.assignment == b.assignment);
}

TEST_CASE("Dataset::validate rejects non-finite values and empty shapes") {
    Dataset X = Dataset::from_rows(2, {{0, 0}, {1, 1}});
    CHECK_NOTHROW(X.validate());
    X.values[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(X.validate(), std::invalid_argument);
    Dataset empty;
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}
