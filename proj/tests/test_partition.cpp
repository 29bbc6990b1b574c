#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "poegp/partition.hpp"

using namespace poegp;

TEST_CASE("random_partition: exact division") {
    const Partition p = random_partition(9, 3, 1);
    CHECK(p.num_experts == 3);
    const auto sizes = p.group_sizes();
    for (const int s : sizes) CHECK(s == 3);
}

TEST_CASE("random_partition: round-robin remainder sizes") {
    const Partition p = random_partition(10, 3, 1);
    CHECK(p.num_experts == 4);
    std::vector<int> sizes = p.group_sizes();
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{2, 2, 3, 3});
}

TEST_CASE("random_partition: deterministic per seed, sizes differ by at most one") {
    for (const uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
        const Partition a = random_partition(53, 8, seed);
        const Partition b = random_partition(53, 8, seed);
        CHECK(a.assignments == b.assignments);
        const auto sizes = a.group_sizes();
        const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
        CHECK(*mx - *mn <= 1);
    }
    CHECK(random_partition(53, 8, 1).assignments != random_partition(53, 8, 2).assignments);
}

TEST_CASE("random_partition: points_per_expert out of range") {
    CHECK_THROWS_AS(random_partition(10, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(random_partition(10, 11, 0), std::invalid_argument);
}

TEST_CASE("partition: union of groups covers the rows disjointly") {
    Rng rng(6);
    const Eigen::MatrixXd X = test_helpers::random_matrix(rng, 37, 2);
    for (const Partition& p :
         {random_partition(37, 5, 3), kmeans_partition(X, 5, 3)}) {
        std::set<int> seen;
        int total = 0;
        for (const auto& g : p.groups()) {
            CHECK(!g.empty());
            for (const int r : g) {
                CHECK(seen.insert(r).second);  // disjoint
                ++total;
            }
        }
        CHECK(total == 37);
    }
}

TEST_CASE("kmeans_partition: separates two well-separated blobs") {
    Eigen::MatrixXd X(20, 1);
    for (int i = 0; i < 10; ++i) X(i, 0) = 0.0 + 0.01 * i;
    for (int i = 10; i < 20; ++i) X(i, 0) = 100.0 + 0.01 * i;
    const Partition p = kmeans_partition(X, 10, 0);
    CHECK(p.num_experts == 2);
    for (int i = 1; i < 10; ++i) CHECK(p.assignments[i] == p.assignments[0]);
    for (int i = 11; i < 20; ++i) CHECK(p.assignments[i] == p.assignments[10]);
    CHECK(p.assignments[0] != p.assignments[10]);
}

TEST_CASE("kmeans_partition: single expert takes everything") {
    Rng rng(8);
    const Eigen::MatrixXd X = test_helpers::random_matrix(rng, 12, 3);
    const Partition p = kmeans_partition(X, 12, 0);
    CHECK(p.num_experts == 1);
    for (const int a : p.assignments) CHECK(a == 0);
}

TEST_CASE("kmeans_partition: objective trace is non-increasing") {
    Rng rng(10);
    const Eigen::MatrixXd X = test_helpers::random_matrix(rng, 120, 2);
    std::vector<double> trace;
    kmeans_partition(X, 10, 4, 100, &trace);
    REQUIRE(trace.size() >= 2);
    for (size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
}

TEST_CASE("kmeans_partition: deterministic per seed") {
    Rng rng(12);
    const Eigen::MatrixXd X = test_helpers::random_matrix(rng, 60, 2);
    CHECK(kmeans_partition(X, 7, 5).assignments == kmeans_partition(X, 7, 5).assignments);
}
