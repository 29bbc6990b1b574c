#pragma once

#include <Eigen/Dense>
#include <memory>

#include "poegp/aggregate.hpp"
#include "poegp/gp.hpp"
#include "poegp/rng.hpp"

namespace test_helpers {

inline Eigen::MatrixXd random_matrix(poegp::Rng& rng, int n, int d, double scale = 1.0) {
    Eigen::MatrixXd X(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = scale * rng.normal();
    return X;
}

inline Eigen::VectorXd random_vector(poegp::Rng& rng, int n, double scale = 1.0) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = scale * rng.normal();
    return v;
}

// SPD matrix A = G G' + n I, comfortably well conditioned.
inline Eigen::MatrixXd random_spd(poegp::Rng& rng, int n) {
    const Eigen::MatrixXd G = random_matrix(rng, n, n);
    Eigen::MatrixXd A = G * G.transpose();
    A.diagonal().array() += n;
    return A;
}

inline poegp::Hyperparameters random_hyp(poegp::Rng& rng, int d) {
    poegp::Hyperparameters h(d);
    for (int k = 0; k < d; ++k) h.log_lengthscales(k) = 0.5 * rng.normal();
    h.log_signal_std = 0.3 * rng.normal();
    h.log_noise_std = std::log(0.2) + 0.3 * rng.normal();
    return h;
}

inline std::shared_ptr<const poegp::Dataset> random_dataset(poegp::Rng& rng, int n, int d) {
    return std::make_shared<const poegp::Dataset>(random_matrix(rng, n, d),
                                                  random_vector(rng, n));
}

// Central finite differences of the LML in log-parameter space.
inline Eigen::VectorXd fd_lml_gradient(const poegp::Dataset& data,
                                       const poegp::Hyperparameters& hyp,
                                       double step = 1e-5) {
    const Eigen::VectorXd theta = hyp.to_vector();
    Eigen::VectorXd g(theta.size());
    for (int i = 0; i < theta.size(); ++i) {
        Eigen::VectorXd tp = theta, tm = theta;
        tp(i) += step;
        tm(i) -= step;
        const double fp =
            poegp::log_marginal_likelihood(data, poegp::Hyperparameters::from_vector(tp));
        const double fm =
            poegp::log_marginal_likelihood(data, poegp::Hyperparameters::from_vector(tm));
        g(i) = (fp - fm) / (2.0 * step);
    }
    return g;
}

// Random expert slice with variances in (0.05, prior) and a clear gap to the
// prior so weighting functionals stay well behaved.
inline poegp::ExpertSlice random_slice(poegp::Rng& rng, int J) {
    poegp::ExpertSlice s;
    s.prior_variance = 1.0 + 2.0 * rng.uniform();
    s.means.resize(J);
    s.variances.resize(J);
    for (int j = 0; j < J; ++j) {
        s.means(j) = 2.0 * rng.normal();
        s.variances(j) = 0.05 + (s.prior_variance - 0.05) * rng.uniform();
    }
    return s;
}

}  // namespace test_helpers
