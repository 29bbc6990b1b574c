#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace poegp {

// Latent-function space vs observed-output space. F-space predictions carry
// the posterior over f(x_*); Y-space adds the observation noise variance.
enum class Space { F, Y };

inline const char* to_string(Space s) { return s == Space::F ? "f" : "y"; }

// Shared kernel/noise parameters, stored in log-space so the optimizer works
// unconstrained. One lengthscale per input dimension (ARD).
struct Hyperparameters {
    Eigen::VectorXd log_lengthscales;
    double log_signal_std = 0.0;
    double log_noise_std = std::log(0.1);

    Hyperparameters() = default;
    explicit Hyperparameters(int dim)
        : log_lengthscales(Eigen::VectorXd::Zero(dim)) {}

    int dim() const { return static_cast<int>(log_lengthscales.size()); }
    int num_params() const { return dim() + 2; }

    Eigen::VectorXd lengthscales() const { return log_lengthscales.array().exp(); }
    double signal_std() const { return std::exp(log_signal_std); }
    double noise_std() const { return std::exp(log_noise_std); }
    double signal_var() const { return std::exp(2.0 * log_signal_std); }
    double noise_var() const { return std::exp(2.0 * log_noise_std); }

    // Flat layout [log l_1..D, log sigma_f, log sigma_y]; the optimizer and
    // gradient code agree on this ordering.
    Eigen::VectorXd to_vector() const {
        Eigen::VectorXd v(num_params());
        v.head(dim()) = log_lengthscales;
        v(dim()) = log_signal_std;
        v(dim() + 1) = log_noise_std;
        return v;
    }

    static Hyperparameters from_vector(const Eigen::VectorXd& v) {
        if (v.size() < 3)
            throw std::invalid_argument("Hyperparameters::from_vector: need at least 3 entries");
        Hyperparameters h;
        const int d = static_cast<int>(v.size()) - 2;
        h.log_lengthscales = v.head(d);
        h.log_signal_std = v(d);
        h.log_noise_std = v(d + 1);
        return h;
    }

    void validate() const {
        if (dim() < 1)
            throw std::invalid_argument("Hyperparameters: need at least one lengthscale");
        if (!log_lengthscales.allFinite() || !std::isfinite(log_signal_std) ||
            !std::isfinite(log_noise_std))
            throw std::invalid_argument("Hyperparameters: non-finite log-parameter");
    }
};

// Per-test-point Gaussian predictive distribution.
struct GaussianPrediction {
    double mean = 0.0;
    double variance = 0.0;
    Space space = Space::F;
};

}  // namespace poegp
