#include "poegp/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace poegp {

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X1, const Eigen::MatrixXd& X2,
                              const Hyperparameters& hyp) {
    hyp.validate();
    const int d = hyp.dim();
    if (X1.cols() != d || X2.cols() != d)
        throw std::invalid_argument(
            "kernel_matrix: feature dimensions (" + std::to_string(X1.cols()) + ", " +
            std::to_string(X2.cols()) + ") do not match hyperparameter dimension " +
            std::to_string(d));

    // Accumulate scaled squared distances dimension by dimension. Direct
    // differences keep K(X, X) exactly symmetric with an exactly zero
    // diagonal distance, unlike the a^2 + b^2 - 2ab expansion.
    const int n1 = static_cast<int>(X1.rows());
    const int n2 = static_cast<int>(X2.rows());
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n1, n2);
    Eigen::MatrixXd diff(n1, n2);
    for (int k = 0; k < d; ++k) {
        const double inv_l2 = std::exp(-2.0 * hyp.log_lengthscales(k));
        diff = X1.col(k).replicate(1, n2);
        diff.rowwise() -= X2.col(k).transpose();
        q.array() += inv_l2 * diff.array().square();
    }
    return hyp.signal_var() * (-0.5 * q.array()).exp();
}

Eigen::VectorXd kernel_cross(const Eigen::MatrixXd& X, const Eigen::VectorXd& x_star,
                             const Hyperparameters& hyp) {
    if (x_star.size() != X.cols())
        throw std::invalid_argument("kernel_cross: test point dimension mismatch");
    return kernel_matrix(X, x_star.transpose(), hyp).col(0);
}

Eigen::MatrixXd squared_distance_dim(const Eigen::MatrixXd& X1, const Eigen::MatrixXd& X2,
                                     int dim) {
    if (dim < 0 || dim >= X1.cols() || X1.cols() != X2.cols())
        throw std::invalid_argument("squared_distance_dim: dimension out of range");
    Eigen::MatrixXd diff = X1.col(dim).replicate(1, X2.rows());
    diff.rowwise() -= X2.col(dim).transpose();
    return diff.array().square();
}

}  // namespace poegp
