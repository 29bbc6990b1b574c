#include "poegp/gp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace poegp {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

Eigen::MatrixXd noisy_kernel(const Dataset& data, const Hyperparameters& hyp) {
    Eigen::MatrixXd M = kernel_matrix(data.X, data.X, hyp);
    M.diagonal().array() += hyp.noise_var();
    return M;
}
}  // namespace

Dataset::Dataset(Eigen::MatrixXd X_in, Eigen::VectorXd y_in)
    : X(std::move(X_in)),
      y(std::move(y_in)),
      feature_means(Eigen::VectorXd::Zero(X.cols())),
      feature_stds(Eigen::VectorXd::Ones(X.cols())) {
    validate();
}

void Dataset::validate() const {
    if (n() < 1) throw std::invalid_argument("Dataset: empty");
    if (y.size() != n()) throw std::invalid_argument("Dataset: X/y row mismatch");
    if (!X.allFinite() || !y.allFinite())
        throw std::invalid_argument("Dataset: non-finite entries");
    if (feature_means.size() != dim() || feature_stds.size() != dim())
        throw std::invalid_argument("Dataset: standardization record has wrong dimension");
    if ((feature_stds.array() <= 0.0).any() || !(target_std > 0.0))
        throw std::invalid_argument("Dataset: standardization stds must be positive");
}

Dataset Dataset::subset(const std::vector<int>& rows) const {
    if (rows.empty()) throw std::invalid_argument("Dataset::subset: empty row set");
    Dataset out;
    out.X.resize(rows.size(), dim());
    out.y.resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= n())
            throw std::invalid_argument("Dataset::subset: row index out of range");
        out.X.row(i) = X.row(rows[i]);
        out.y(i) = y(rows[i]);
    }
    out.feature_means = feature_means;
    out.feature_stds = feature_stds;
    out.target_mean = target_mean;
    out.target_std = target_std;
    return out;
}

TrainedGP train_gp(std::shared_ptr<const Dataset> data, const Hyperparameters& hyp,
                   const char* label) {
    data->validate();
    if (hyp.dim() != data->dim())
        throw std::invalid_argument("train_gp: hyperparameter dimension does not match data");
    TrainedGP gp;
    gp.factor = cholesky_with_jitter(noisy_kernel(*data, hyp), label);
    gp.alpha = chol_solve(gp.factor, data->y);
    gp.data = std::move(data);
    gp.hyp = hyp;
    return gp;
}

double log_marginal_likelihood(const Dataset& data, const Hyperparameters& hyp) {
    data.validate();
    const CholeskyFactor F = cholesky_with_jitter(noisy_kernel(data, hyp), "lml covariance");
    const Eigen::VectorXd alpha = chol_solve(F, data.y);
    return -0.5 * data.y.dot(alpha) - 0.5 * log_det(F) - 0.5 * data.n() * kLog2Pi;
}

LmlValueGrad lml_value_grad(const Dataset& data, const Hyperparameters& hyp) {
    data.validate();
    const int n = data.n();
    const int d = data.dim();
    const Eigen::MatrixXd K = kernel_matrix(data.X, data.X, hyp);
    Eigen::MatrixXd M = K;
    M.diagonal().array() += hyp.noise_var();
    const CholeskyFactor F = cholesky_with_jitter(M, "lml covariance");
    const Eigen::VectorXd alpha = chol_solve(F, data.y);

    LmlValueGrad out;
    out.value = -0.5 * data.y.dot(alpha) - 0.5 * log_det(F) - 0.5 * n * kLog2Pi;

    // B = alpha alpha' - (K + sigma_y^2 I)^{-1}; dLML/dθ = 1/2 tr(B dM/dθ).
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd B = -chol_solve(F, eye);
    B.noalias() += alpha * alpha.transpose();

    out.grad.resize(hyp.num_params());
    for (int k = 0; k < d; ++k) {
        // dM/d log l_k = K .* S_k / l_k^2
        const double inv_l2 = std::exp(-2.0 * hyp.log_lengthscales(k));
        const Eigen::MatrixXd Sk = squared_distance_dim(data.X, data.X, k);
        out.grad(k) = 0.5 * inv_l2 * (B.array() * K.array() * Sk.array()).sum();
    }
    // dM/d log sigma_f = 2K; dM/d log sigma_y = 2 sigma_y^2 I.
    out.grad(d) = (B.array() * K.array()).sum();
    out.grad(d + 1) = hyp.noise_var() * B.trace();
    return out;
}

Eigen::VectorXd lml_gradient(const Dataset& data, const Hyperparameters& hyp) {
    return lml_value_grad(data, hyp).grad;
}

Hyperparameters default_init(const Dataset& data) {
    Hyperparameters h(data.dim());
    for (int k = 0; k < data.dim(); ++k) {
        const double mean = data.X.col(k).mean();
        const double var = (data.X.col(k).array() - mean).square().sum() /
                           std::max(1, data.n() - 1);
        const double sd = std::sqrt(var);
        h.log_lengthscales(k) = std::log(sd > 0.0 ? sd : 1.0);
    }
    h.log_signal_std = 0.0;
    h.log_noise_std = std::log(0.1);
    return h;
}

FitResult fit(const Dataset& data, const Hyperparameters& init, const FitOptions& opts) {
    init.validate();
    const ObjectiveFn objective = [&data](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
        try {
            const LmlValueGrad vg = lml_value_grad(data, Hyperparameters::from_vector(theta));
            grad = -vg.grad;
            return -vg.value;
        } catch (const NumericalError&) {
            grad.setZero();
            return std::numeric_limits<double>::infinity();
        }
    };
    const LbfgsResult r = lbfgs_minimize(objective, init.to_vector(), opts.lbfgs);
    FitResult out;
    out.hyp = Hyperparameters::from_vector(r.x);
    out.lml = -r.fx;
    out.iterations = r.iterations;
    out.converged = r.converged;
    out.line_search_failed = r.line_search_failed;
    out.lml_trace.reserve(r.trace.size());
    for (const double f : r.trace) out.lml_trace.push_back(-f);
    return out;
}

void predict_batch(const TrainedGP& gp, const Eigen::MatrixXd& X_star, Space space,
                   Eigen::VectorXd& means, Eigen::VectorXd& variances) {
    if (X_star.cols() != gp.data->dim())
        throw std::invalid_argument("predict: test point dimension mismatch");
    const Eigen::MatrixXd Ks = kernel_matrix(gp.data->X, X_star, gp.hyp);  // n x t
    means = Ks.transpose() * gp.alpha;
    const Eigen::MatrixXd V = gp.factor.L.triangularView<Eigen::Lower>().solve(Ks);
    const Eigen::ArrayXd explained = V.array().square().colwise().sum().transpose();
    variances = (kernel_diag_value(gp.hyp) - explained).max(0.0).matrix();
    if (space == Space::Y) variances.array() += gp.hyp.noise_var();
}

GaussianPrediction predict(const TrainedGP& gp, const Eigen::VectorXd& x_star, Space space) {
    Eigen::VectorXd m, v;
    predict_batch(gp, x_star.transpose(), space, m, v);
    return {m(0), v(0), space};
}

double nlpd(const GaussianPrediction& pred, double y_true) {
    if (pred.space != Space::Y)
        throw std::invalid_argument("nlpd: prediction must be in y-space");
    if (!(pred.variance > 0.0))
        throw std::invalid_argument("nlpd: non-positive predictive variance");
    const double r = y_true - pred.mean;
    return 0.5 * std::log(2.0 * M_PI * pred.variance) + r * r / (2.0 * pred.variance);
}

}  // namespace poegp
