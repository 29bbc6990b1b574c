#include "poegp/linalg.hpp"

#include <cmath>
#include <string>

namespace poegp {

namespace {
constexpr double kJitterScales[] = {1e-10, 1e-8, 1e-6, 1e-4};
}

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& A, const char* label) {
    const int n = static_cast<int>(A.rows());
    if (n == 0 || A.cols() != n)
        throw std::invalid_argument(std::string("cholesky_with_jitter: ") + label +
                                    " is not square");
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument(std::string("cholesky_with_jitter: ") + label +
                                    " is not symmetric within 1e-10");

    const double diag_mean = A.diagonal().mean();
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success)
        return {Eigen::MatrixXd(llt.matrixL()), 0.0};

    for (const double s : kJitterScales) {
        const double jitter = s * diag_mean;
        Eigen::MatrixXd Aj = A;
        Aj.diagonal().array() += jitter;
        llt.compute(Aj);
        if (llt.info() == Eigen::Success)
            return {Eigen::MatrixXd(llt.matrixL()), jitter};
    }
    throw NumericalError(std::string("cholesky_with_jitter: ") + label + " (" +
                         std::to_string(n) + "x" + std::to_string(n) +
                         ", mean diagonal " + std::to_string(diag_mean) +
                         ") is not positive definite even with jitter 1e-4*mean(diag)");
}

Eigen::MatrixXd chol_solve(const CholeskyFactor& F, const Eigen::MatrixXd& B) {
    if (B.rows() != F.n())
        throw std::invalid_argument("chol_solve: right-hand side has " +
                                    std::to_string(B.rows()) + " rows, factor is " +
                                    std::to_string(F.n()) + "x" + std::to_string(F.n()));
    Eigen::MatrixXd X = F.L.triangularView<Eigen::Lower>().solve(B);
    F.L.triangularView<Eigen::Lower>().transpose().solveInPlace(X);
    return X;
}

Eigen::VectorXd chol_solve(const CholeskyFactor& F, const Eigen::VectorXd& b) {
    return Eigen::VectorXd(chol_solve(F, Eigen::MatrixXd(b)));
}

double log_det(const CholeskyFactor& F) {
    if (F.n() == 0) throw std::invalid_argument("log_det: empty factor");
    return 2.0 * F.L.diagonal().array().log().sum();
}

}  // namespace poegp
