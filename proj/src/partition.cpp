#include "poegp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "poegp/rng.hpp"

namespace poegp {

const char* to_string(PartitionStrategy s) {
    return s == PartitionStrategy::Random ? "random" : "kmeans";
}

PartitionStrategy partition_strategy_from_string(const std::string& s) {
    if (s == "random") return PartitionStrategy::Random;
    if (s == "kmeans" || s == "clustering") return PartitionStrategy::KMeans;
    throw std::invalid_argument("unknown partition strategy: " + s);
}

std::vector<std::vector<int>> Partition::groups() const {
    std::vector<std::vector<int>> g(num_experts);
    for (int i = 0; i < n(); ++i) g[assignments[i]].push_back(i);
    return g;
}

std::vector<int> Partition::group_sizes() const {
    std::vector<int> sizes(num_experts, 0);
    for (const int a : assignments) ++sizes[a];
    return sizes;
}

void Partition::validate() const {
    if (num_experts < 1) throw std::invalid_argument("Partition: no experts");
    std::vector<int> sizes(num_experts, 0);
    for (const int a : assignments) {
        if (a < 0 || a >= num_experts)
            throw std::invalid_argument("Partition: assignment out of range");
        ++sizes[a];
    }
    for (int j = 0; j < num_experts; ++j)
        if (sizes[j] == 0)
            throw std::invalid_argument("Partition: expert " + std::to_string(j) +
                                        " owns no rows");
}

namespace {
int expert_count(int n, int points_per_expert) {
    if (points_per_expert < 1 || points_per_expert > n)
        throw std::invalid_argument("points_per_expert must be in [1, n]; got " +
                                    std::to_string(points_per_expert) + " with n = " +
                                    std::to_string(n));
    return (n + points_per_expert - 1) / points_per_expert;
}
}  // namespace

Partition random_partition(int n, int points_per_expert, uint64_t seed) {
    const int J = expert_count(n, points_per_expert);
    Rng rng(seed);
    const std::vector<int> order = rng.permutation(n);
    Partition p;
    p.assignments.resize(n);
    for (int i = 0; i < n; ++i) p.assignments[order[i]] = i % J;
    p.num_experts = J;
    p.strategy = PartitionStrategy::Random;
    p.seed = seed;
    return p;
}

Partition kmeans_partition(const Eigen::MatrixXd& X, int points_per_expert, uint64_t seed,
                           int max_iter, std::vector<double>* wcss_trace) {
    const int n = static_cast<int>(X.rows());
    const int J = expert_count(n, points_per_expert);
    Rng rng(seed);

    // k-means++ seeding.
    Eigen::MatrixXd centers(J, X.cols());
    Eigen::VectorXd dist2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::max());
    centers.row(0) = X.row(static_cast<int>(rng.uniform_below(n)));
    for (int c = 1; c < J; ++c) {
        for (int i = 0; i < n; ++i)
            dist2(i) = std::min(dist2(i), (X.row(i) - centers.row(c - 1)).squaredNorm());
        const double total = dist2.sum();
        int pick = 0;
        if (total > 0.0) {
            const double u = rng.uniform() * total;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += dist2(i);
                if (acc >= u) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<int>(rng.uniform_below(n));  // all points identical
        }
        centers.row(c) = X.row(pick);
    }

    std::vector<int> assign(n, 0);
    std::vector<int> sizes(J, 0);
    auto assign_all = [&]() {
        bool changed = false;
        std::fill(sizes.begin(), sizes.end(), 0);
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (X.row(i) - centers.row(0)).squaredNorm();
            for (int c = 1; c < J; ++c) {
                const double d = (X.row(i) - centers.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) changed = true;
            assign[i] = best;
            ++sizes[best];
        }
        return changed;
    };
    auto repair_empty = [&]() {
        for (int c = 0; c < J; ++c) {
            while (sizes[c] == 0) {
                const int donor = static_cast<int>(
                    std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
                // Farthest point of the donor cluster from its centroid.
                int steal = -1;
                double far_d = -1.0;
                for (int i = 0; i < n; ++i) {
                    if (assign[i] != donor) continue;
                    const double d = (X.row(i) - centers.row(donor)).squaredNorm();
                    if (d > far_d) {
                        far_d = d;
                        steal = i;
                    }
                }
                assign[steal] = c;
                --sizes[donor];
                ++sizes[c];
                centers.row(c) = X.row(steal);
            }
        }
    };
    auto update_centers = [&]() {
        centers.setZero();
        for (int i = 0; i < n; ++i) centers.row(assign[i]) += X.row(i);
        for (int c = 0; c < J; ++c) centers.row(c) /= static_cast<double>(sizes[c]);
    };
    auto wcss = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += (X.row(i) - centers.row(assign[i])).squaredNorm();
        return s;
    };

    assign_all();
    repair_empty();
    update_centers();
    if (wcss_trace) wcss_trace->push_back(wcss());
    for (int it = 0; it < max_iter; ++it) {
        const bool changed = assign_all();
        repair_empty();
        update_centers();
        if (wcss_trace) wcss_trace->push_back(wcss());
        if (!changed) break;
    }

    Partition p;
    p.assignments = std::move(assign);
    p.num_experts = J;
    p.strategy = PartitionStrategy::KMeans;
    p.seed = seed;
    p.validate();
    return p;
}

}  // namespace poegp
