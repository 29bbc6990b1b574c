#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace poegp {

enum class PartitionStrategy { Random, KMeans };

const char* to_string(PartitionStrategy s);
PartitionStrategy partition_strategy_from_string(const std::string& s);

// Assignment of n dataset rows to J experts. Every expert owns at least one
// row; the groups are disjoint and cover the rows exactly.
struct Partition {
    std::vector<int> assignments;  // n entries in [0, J)
    int num_experts = 0;
    PartitionStrategy strategy = PartitionStrategy::Random;
    uint64_t seed = 0;

    int n() const { return static_cast<int>(assignments.size()); }
    // Row indices per expert, each ascending.
    std::vector<std::vector<int>> groups() const;
    std::vector<int> group_sizes() const;
    void validate() const;
};

// J = ceil(n / points_per_expert); a seeded shuffle dealt round-robin, so
// group sizes differ by at most one.
Partition random_partition(int n, int points_per_expert, uint64_t seed);

// Lloyd's algorithm from k-means++ seeding on standardized features; empty
// clusters are repaired by stealing the farthest point from the largest
// cluster. Cluster sizes are whatever k-means produces; only J is derived
// from points_per_expert. If wcss_trace is given it receives the
// within-cluster sum of squares after every update (non-increasing).
Partition kmeans_partition(const Eigen::MatrixXd& X, int points_per_expert, uint64_t seed,
                           int max_iter = 100, std::vector<double>* wcss_trace = nullptr);

}  // namespace poegp
