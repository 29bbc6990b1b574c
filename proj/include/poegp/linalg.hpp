#pragma once

#include <Eigen/Dense>

#include "poegp/errors.hpp"

namespace poegp {

// Lower-triangular Cholesky factor of A + jitter*I, together with the total
// diagonal inflation that was needed to make the factorization succeed.
struct CholeskyFactor {
    Eigen::MatrixXd L;
    double jitter = 0.0;

    int n() const { return static_cast<int>(L.rows()); }
};

// Factorizes a symmetric matrix, escalating jitter through
// {0, 1e-10, 1e-8, 1e-6, 1e-4} * mean(diag(A)) until LLT succeeds.
// Throws std::invalid_argument if A is not symmetric within 1e-10 and
// NumericalError (naming `label`) if the schedule is exhausted.
CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& A, const char* label = "matrix");

// (A + jitter*I)^{-1} B via forward/back substitution.
Eigen::MatrixXd chol_solve(const CholeskyFactor& F, const Eigen::MatrixXd& B);
Eigen::VectorXd chol_solve(const CholeskyFactor& F, const Eigen::VectorXd& b);

// log det(A + jitter*I) = 2 sum_i log L_ii.
double log_det(const CholeskyFactor& F);

}  // namespace poegp
