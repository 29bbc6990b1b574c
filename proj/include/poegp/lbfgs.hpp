#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace poegp {

struct LbfgsOptions {
    int max_iters = 100;
    double grad_tol = 1e-6;  // inf-norm stopping test
    int history = 10;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    int max_line_search = 25;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double fx = 0.0;
    Eigen::VectorXd grad;
    int iterations = 0;
    bool converged = false;
    bool line_search_failed = false;
    // f at the start point and after every accepted iterate; strictly
    // decreasing while the line search holds the Wolfe conditions.
    std::vector<double> trace;
};

// Objective callback: return f(x) and fill grad (same size as x). May return
// +inf to reject a trial point; the line search backs off.
using ObjectiveFn = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

// Limited-memory BFGS with a strong-Wolfe line search (bracketing plus
// cubic-interpolation zoom). Deterministic: no randomness, no parallelism.
LbfgsResult lbfgs_minimize(const ObjectiveFn& fg, const Eigen::VectorXd& x0,
                           const LbfgsOptions& opts = {});

}  // namespace poegp
