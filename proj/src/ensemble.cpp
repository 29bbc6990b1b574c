#include "poegp/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "poegp/parallel.hpp"
#include "poegp/rng.hpp"

namespace poegp {

double pool_lml(std::span<const Dataset> subsets, const Hyperparameters& hyp) {
    if (subsets.empty()) throw std::invalid_argument("pool_lml: no expert subsets");
    double total = 0.0;
    for (size_t j = 0; j < subsets.size(); ++j) {
        try {
            total += log_marginal_likelihood(subsets[j], hyp);
        } catch (const NumericalError& e) {
            throw NumericalError("expert " + std::to_string(j) + ": " + e.what());
        }
    }
    return total;
}

double pool_lml(const Dataset& data, const Partition& partition, const Hyperparameters& hyp) {
    std::vector<Dataset> subsets;
    for (const auto& rows : partition.groups()) subsets.push_back(data.subset(rows));
    return pool_lml(std::span<const Dataset>(subsets), hyp);
}

LmlValueGrad pool_lml_value_grad(std::span<const std::shared_ptr<const Dataset>> subsets,
                                 const Hyperparameters& hyp, int threads) {
    const int J = static_cast<int>(subsets.size());
    if (J == 0) throw std::invalid_argument("pool_lml_value_grad: no expert subsets");
    std::vector<LmlValueGrad> slots(J);
    parallel_for(J, threads, [&](int j) {
        try {
            slots[j] = lml_value_grad(*subsets[j], hyp);
        } catch (const NumericalError& e) {
            throw NumericalError("expert " + std::to_string(j) + ": " + e.what());
        }
    });
    LmlValueGrad total;
    total.value = 0.0;
    total.grad = Eigen::VectorXd::Zero(hyp.num_params());
    for (int j = 0; j < J; ++j) {  // fixed index order: bit-stable reduction
        total.value += slots[j].value;
        total.grad += slots[j].grad;
    }
    return total;
}

ExpertPool train_pool(std::shared_ptr<const Dataset> data, const Partition& partition,
                      const Hyperparameters& init, const TrainOptions& opts) {
    data->validate();
    partition.validate();
    if (partition.n() != data->n())
        throw std::invalid_argument("train_pool: partition covers " +
                                    std::to_string(partition.n()) + " rows, dataset has " +
                                    std::to_string(data->n()));

    ExpertPool pool;
    pool.data = data;
    pool.partition = partition;
    for (const auto& rows : partition.groups())
        pool.expert_data.push_back(std::make_shared<const Dataset>(data->subset(rows)));

    const int threads = opts.threads;
    const auto subsets =
        std::span<const std::shared_ptr<const Dataset>>(pool.expert_data);
    const ObjectiveFn objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
        try {
            const LmlValueGrad vg =
                pool_lml_value_grad(subsets, Hyperparameters::from_vector(theta), threads);
            grad = -vg.grad;
            return -vg.value;
        } catch (const NumericalError&) {
            grad.setZero();
            return std::numeric_limits<double>::infinity();
        }
    };
    const LbfgsResult r = lbfgs_minimize(objective, init.to_vector(), opts.fit.lbfgs);
    pool.shared_hyp = Hyperparameters::from_vector(r.x);
    pool.fit_info.hyp = pool.shared_hyp;
    pool.fit_info.lml = -r.fx;
    pool.fit_info.iterations = r.iterations;
    pool.fit_info.converged = r.converged;
    pool.fit_info.line_search_failed = r.line_search_failed;
    for (const double f : r.trace) pool.fit_info.lml_trace.push_back(-f);

    pool.experts.resize(pool.expert_data.size());
    parallel_for(static_cast<int>(pool.expert_data.size()), threads, [&](int j) {
        pool.experts[j] = train_gp(pool.expert_data[j], pool.shared_hyp,
                                   ("expert " + std::to_string(j) + " covariance").c_str());
    });
    for (const auto& e : pool.experts)
        if (e.factor.jitter > 0.0) ++pool.jitter_events;
    return pool;
}

void build_grbcm(ExpertPool& pool, double master_fraction, uint64_t seed, int threads) {
    if (pool.experts.empty()) throw std::invalid_argument("build_grbcm: pool is not trained");
    if (master_fraction >= 1.0)
        throw std::invalid_argument("build_grbcm: master_fraction must be < 1");
    const int n = pool.data->n();
    const int J = pool.partition.num_experts;
    const double mean_size = static_cast<double>(n) / J;

    int master_size = static_cast<int>(std::lround(
        master_fraction > 0.0 ? std::min(master_fraction * n, mean_size) : mean_size));
    master_size = std::clamp(master_size, 1, n);

    GrbcmStructure g;
    g.master_fraction = static_cast<double>(master_size) / n;
    g.seed = seed;
    Rng rng(seed);
    g.master_rows = rng.sample_without_replacement(n, master_size);

    const auto groups = pool.partition.groups();
    for (int j = 1; j < J; ++j) {
        std::vector<int> rows = g.master_rows;
        rows.insert(rows.end(), groups[j].begin(), groups[j].end());
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        g.child_rows.push_back(std::move(rows));
    }

    g.master = train_gp(std::make_shared<const Dataset>(pool.data->subset(g.master_rows)),
                        pool.shared_hyp, "grbcm master covariance");
    g.children.resize(g.child_rows.size());
    parallel_for(static_cast<int>(g.child_rows.size()), threads, [&](int j) {
        g.children[j] =
            train_gp(std::make_shared<const Dataset>(pool.data->subset(g.child_rows[j])),
                     pool.shared_hyp, ("grbcm child " + std::to_string(j) + " covariance").c_str());
    });
    if (g.master.factor.jitter > 0.0) ++pool.jitter_events;
    for (const auto& c : g.children)
        if (c.factor.jitter > 0.0) ++pool.jitter_events;
    pool.grbcm = std::move(g);
}

ExpertPredictions predict_experts(const ExpertPool& pool, const Eigen::MatrixXd& X_star,
                                  Space space, int threads) {
    if (pool.experts.empty())
        throw std::invalid_argument("predict_experts: pool is not trained");
    const int t = static_cast<int>(X_star.rows());
    const int J = pool.num_experts();
    ExpertPredictions out;
    out.means.resize(t, J);
    out.variances.resize(t, J);
    out.space = space;
    parallel_for(J, threads, [&](int j) {
        Eigen::VectorXd m, v;
        predict_batch(pool.experts[j], X_star, space, m, v);
        out.means.col(j) = m;
        out.variances.col(j) = v;
    });
    double prior = kernel_diag_value(pool.shared_hyp);
    if (space == Space::Y) prior += pool.shared_hyp.noise_var();
    out.prior_variance = Eigen::VectorXd::Constant(t, prior);
    return out;
}

GrbcmPredictions predict_grbcm(const ExpertPool& pool, const Eigen::MatrixXd& X_star,
                               Space space, int threads) {
    if (!pool.grbcm)
        throw std::invalid_argument("predict_grbcm: build_grbcm has not been called");
    const auto& g = *pool.grbcm;
    const int t = static_cast<int>(X_star.rows());
    const int C = static_cast<int>(g.children.size());
    GrbcmPredictions out;
    out.child_means.resize(t, C);
    out.child_variances.resize(t, C);
    out.space = space;
    predict_batch(g.master, X_star, space, out.master_mean, out.master_variance);
    parallel_for(C, threads, [&](int j) {
        Eigen::VectorXd m, v;
        predict_batch(g.children[j], X_star, space, m, v);
        out.child_means.col(j) = m;
        out.child_variances.col(j) = v;
    });
    return out;
}

}  // namespace poegp
