#pragma once

#include <Eigen/Dense>
#include <string>

#include "poegp/types.hpp"

namespace poegp {

enum class Method { PoE, GPoE, BCM, RBCM, GRBCM, Barycenter };
enum class WeightFunctional { Uniform, Variance, DiffEntropy, Wasserstein };
enum class WeightTransform { Softmax, Raw };
enum class BarycenterMode { VarianceAverage, ExactW2 };

const char* to_string(Method m);
const char* to_string(WeightFunctional f);
const char* to_string(WeightTransform t);
const char* to_string(BarycenterMode m);
Method method_from_string(const std::string& s);
WeightFunctional functional_from_string(const std::string& s);
WeightTransform transform_from_string(const std::string& s);
BarycenterMode barycenter_mode_from_string(const std::string& s);

// How per-expert confidences become weights. Softmax weights are always
// normalized (they sum to one by construction); the Raw transform exists for
// the classic unnormalized differential-entropy baseline only.
struct WeightingSpec {
    WeightFunctional functional = WeightFunctional::Variance;
    WeightTransform transform = WeightTransform::Softmax;
    double temperature = 100.0;  // softmax only, T >= 0
    bool normalized = true;

    void validate() const;
};

struct AggregationConfig {
    Method method = Method::GPoE;
    WeightingSpec weighting;
    Space space = Space::F;
    BarycenterMode barycenter_mode = BarycenterMode::VarianceAverage;

    void validate() const;
    std::string cell_id() const;  // short label, e.g. "gpoe_var_T100_f"
};

// All experts' predictions at one test point, plus the matching prior
// variance (for grBCM slices this is the master's posterior variance, the
// reference the corrections in that combiner are taken against).
struct ExpertSlice {
    Eigen::VectorXd means;
    Eigen::VectorXd variances;  // strictly positive
    double prior_variance = 1.0;

    int size() const { return static_cast<int>(means.size()); }
    void validate() const;
};

// Squared 2-Wasserstein distance between scalar Gaussians:
// (m1-m2)^2 + (sqrt(v1)-sqrt(v2))^2.
double w2_gaussian(double m1, double v1, double m2, double v2);

// Per-expert confidence values; smaller means more confident throughout.
//   Variance:    psi_j = sigma_j^2
//   DiffEntropy: psi_j = -1/2 (log sigma_*^2 - log sigma_j^2)
//   Wasserstein: psi_j = -W2^2(N(m_j, sigma_j^2), N(0, sigma_*^2))
Eigen::VectorXd psi(const ExpertSlice& slice, WeightFunctional functional);

// psi -> beta. Softmax uses a max-shift so weights are invariant to adding a
// constant to every psi.
Eigen::VectorXd weights(const Eigen::VectorXd& psi_values, const WeightingSpec& spec);

// Generalized product of experts: precision = sum beta_j / sigma_j^2. The
// plain PoE is beta = 1.
GaussianPrediction aggregate_gpoe(const ExpertSlice& slice, const Eigen::VectorXd& beta,
                                  Space space);

// (Robust) Bayesian committee machine:
// precision = sum beta_j (sigma_j^{-2} - sigma_*^{-2}) + sigma_*^{-2}.
// The BCM is beta = 1. Non-positive aggregate precision is a hard error.
GaussianPrediction aggregate_rbcm(const ExpertSlice& slice, const Eigen::VectorXd& beta,
                                  Space space);

// grBCM combiner over augmented children with the master as the reference:
// precision = sum_j beta_j (sigma_{+j}^{-2} - sigma_c^{-2}) + sigma_c^{-2},
// mean scaled accordingly with the (sum beta - 1) master correction. With no
// children the master's prediction is returned.
GaussianPrediction aggregate_grbcm(const ExpertSlice& children, double master_mean,
                                   double master_variance, const Eigen::VectorXd& beta,
                                   Space space);

// Wasserstein barycenter of the expert Gaussians. Mean is the weighted mean
// in both modes; VarianceAverage averages variances, ExactW2 averages
// standard deviations (the exact 1-D fixed point). Requires normalized beta.
GaussianPrediction aggregate_barycenter(const ExpertSlice& slice, const Eigen::VectorXd& beta,
                                        BarycenterMode mode, Space space);

struct AggregateResult {
    GaussianPrediction prediction;
    Eigen::VectorXd beta;  // diagnostics
};

// psi -> weights -> method dispatch for PoE/gPoE/BCM/rBCM/barycenter.
AggregateResult aggregate(const AggregationConfig& config, const ExpertSlice& slice);

// grBCM dispatch; the children slice must carry the master's variance as its
// prior_variance. The first child's weight is fixed to 1, the rest follow the
// configured weighting.
AggregateResult aggregate(const AggregationConfig& config, const ExpertSlice& children,
                          double master_mean, double master_variance);

}  // namespace poegp
