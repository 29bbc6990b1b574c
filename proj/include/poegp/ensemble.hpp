#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "poegp/gp.hpp"
#include "poegp/partition.hpp"

namespace poegp {

struct TrainOptions {
    FitOptions fit;
    int threads = 0;  // 0 = hardware concurrency
};

// Master expert on a random global subset D^c plus one augmented child per
// partition cell j >= 2, trained on D^c united with that cell. The master
// displaces cell 1, so a J-cell partition yields J-1 children; with J = 1
// there are no children and the combiner falls back to the master.
struct GrbcmStructure {
    TrainedGP master;
    std::vector<TrainedGP> children;
    std::vector<int> master_rows;                // ascending
    std::vector<std::vector<int>> child_rows;    // each ascending, contains master_rows
    double master_fraction = 0.0;                // as resolved
    uint64_t seed = 0;
};

// J exact GP experts over disjoint subsets, sharing one hyperparameter value
// optimized on the summed marginal likelihood.
struct ExpertPool {
    std::shared_ptr<const Dataset> data;
    Partition partition;
    Hyperparameters shared_hyp;
    std::vector<std::shared_ptr<const Dataset>> expert_data;
    std::vector<TrainedGP> experts;
    std::optional<GrbcmStructure> grbcm;
    FitResult fit_info;
    int jitter_events = 0;  // factorizations (experts, master, children) needing jitter > 0

    int num_experts() const { return static_cast<int>(experts.size()); }
};

// Sum of per-expert log-marginal likelihoods (independent experts). A
// Cholesky failure is rethrown tagged with the failing expert's index.
double pool_lml(std::span<const Dataset> subsets, const Hyperparameters& hyp);
double pool_lml(const Dataset& data, const Partition& partition, const Hyperparameters& hyp);

// Value and gradient of the pooled objective. Experts are evaluated as a
// parallel map into per-expert slots and reduced in index order, so results
// are bit-identical for any worker count.
LmlValueGrad pool_lml_value_grad(std::span<const std::shared_ptr<const Dataset>> subsets,
                                 const Hyperparameters& hyp, int threads);

// Optimizes the shared hyperparameters over the pooled objective, then
// factorizes every expert once at the optimum.
ExpertPool train_pool(std::shared_ptr<const Dataset> data, const Partition& partition,
                      const Hyperparameters& init, const TrainOptions& opts = {});

// Attaches the grBCM master/children structure to a trained pool. The master
// is a seeded uniform sample of min(master_fraction * n, mean cell size)
// rows; master_fraction <= 0 selects the mean cell size. No re-optimization:
// everything is factorized with the pool's shared hyperparameters.
void build_grbcm(ExpertPool& pool, double master_fraction, uint64_t seed, int threads = 0);

// t x J grid of per-expert predictions plus the prior variance per test
// point (k(x,x) = sigma_f^2, plus sigma_y^2 in Y-space).
struct ExpertPredictions {
    Eigen::MatrixXd means;      // t x J
    Eigen::MatrixXd variances;  // t x J
    Eigen::VectorXd prior_variance;
    Space space = Space::F;
};

ExpertPredictions predict_experts(const ExpertPool& pool, const Eigen::MatrixXd& X_star,
                                  Space space, int threads = 0);

// Children grid plus the master's prediction, for the grBCM combiner.
struct GrbcmPredictions {
    Eigen::MatrixXd child_means;      // t x (J-1)
    Eigen::MatrixXd child_variances;  // t x (J-1)
    Eigen::VectorXd master_mean;      // t
    Eigen::VectorXd master_variance;  // t
    Space space = Space::F;
};

GrbcmPredictions predict_grbcm(const ExpertPool& pool, const Eigen::MatrixXd& X_star,
                               Space space, int threads = 0);

}  // namespace poegp
