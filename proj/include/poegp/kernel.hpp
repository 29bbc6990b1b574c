#pragma once

#include <Eigen/Dense>

#include "poegp/types.hpp"

namespace poegp {

// Squared-exponential kernel with ARD lengthscales:
//   k(x, z) = sigma_f^2 * exp(-1/2 * sum_d (x_d - z_d)^2 / l_d^2)
// The only kernel this library ships; everything downstream reaches it
// through these free functions, so adding a family means adding a sibling
// set here.

// Full cross-covariance matrix, n1 x n2. Throws std::invalid_argument on a
// feature-dimension mismatch.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X1, const Eigen::MatrixXd& X2,
                              const Hyperparameters& hyp);

// k(X, x_star) as a column vector.
Eigen::VectorXd kernel_cross(const Eigen::MatrixXd& X, const Eigen::VectorXd& x_star,
                             const Hyperparameters& hyp);

// k(x, x) = sigma_f^2, independent of x for this kernel family.
inline double kernel_diag_value(const Hyperparameters& hyp) { return hyp.signal_var(); }

// Per-dimension squared-difference matrix (x1_{i,d} - x2_{j,d})^2, needed by
// the lengthscale gradients.
Eigen::MatrixXd squared_distance_dim(const Eigen::MatrixXd& X1, const Eigen::MatrixXd& X2,
                                     int dim);

}  // namespace poegp
