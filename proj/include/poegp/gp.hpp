#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "poegp/kernel.hpp"
#include "poegp/lbfgs.hpp"
#include "poegp/linalg.hpp"
#include "poegp/types.hpp"

namespace poegp {

// Training data in standardized units, together with the constants needed to
// map back to the original scale.
struct Dataset {
    Eigen::MatrixXd X;  // n x D
    Eigen::VectorXd y;  // n
    Eigen::VectorXd feature_means;
    Eigen::VectorXd feature_stds;
    double target_mean = 0.0;
    double target_std = 1.0;

    Dataset() = default;
    Dataset(Eigen::MatrixXd X_in, Eigen::VectorXd y_in);

    int n() const { return static_cast<int>(X.rows()); }
    int dim() const { return static_cast<int>(X.cols()); }
    void validate() const;
    Dataset subset(const std::vector<int>& rows) const;
};

// Exact GP posterior state: Cholesky factor of K + sigma_y^2 I and
// alpha = (K + sigma_y^2 I)^{-1} y. Immutable after construction.
struct TrainedGP {
    std::shared_ptr<const Dataset> data;
    Hyperparameters hyp;
    CholeskyFactor factor;
    Eigen::VectorXd alpha;
};

// Factorizes once at the given hyperparameters.
TrainedGP train_gp(std::shared_ptr<const Dataset> data, const Hyperparameters& hyp,
                   const char* label = "training covariance");

// Log-marginal likelihood -1/2 y'a - 1/2 log det(K + sigma_y^2 I) - n/2 log 2pi
// (zero prior mean on standardized targets).
double log_marginal_likelihood(const Dataset& data, const Hyperparameters& hyp);

// Analytic gradient w.r.t. the log-hyperparameters, layout matching
// Hyperparameters::to_vector().
Eigen::VectorXd lml_gradient(const Dataset& data, const Hyperparameters& hyp);

struct LmlValueGrad {
    double value = 0.0;
    Eigen::VectorXd grad;
};

// One factorization for both value and gradient; what the optimizer calls.
LmlValueGrad lml_value_grad(const Dataset& data, const Hyperparameters& hyp);

struct FitOptions {
    LbfgsOptions lbfgs;  // iteration cap 100 by default
};

struct FitResult {
    Hyperparameters hyp;
    double lml = 0.0;
    int iterations = 0;
    bool converged = false;
    bool line_search_failed = false;
    std::vector<double> lml_trace;  // at init and after each accepted iterate
};

// Maximizes the LML from `init`. Deterministic given (data, init, opts); on a
// line-search failure the best iterate found is returned with the flag set.
FitResult fit(const Dataset& data, const Hyperparameters& init, const FitOptions& opts = {});

// Conventional starting point on standardized data: log l_d = log(std of
// dimension d), log sigma_f = 0, log sigma_y = log 0.1.
Hyperparameters default_init(const Dataset& data);

GaussianPrediction predict(const TrainedGP& gp, const Eigen::VectorXd& x_star, Space space);

// Column-batched prediction over t test points; means and variances are
// length t. Same math as predict, one triangular solve for all points.
void predict_batch(const TrainedGP& gp, const Eigen::MatrixXd& X_star, Space space,
                   Eigen::VectorXd& means, Eigen::VectorXd& variances);

// Negative log predictive density of y_true under a Y-space Gaussian.
double nlpd(const GaussianPrediction& pred, double y_true);

}  // namespace poegp
