#include "poegp/aggregate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "poegp/errors.hpp"

namespace poegp {

const char* to_string(Method m) {
    switch (m) {
        case Method::PoE: return "poe";
        case Method::GPoE: return "gpoe";
        case Method::BCM: return "bcm";
        case Method::RBCM: return "rbcm";
        case Method::GRBCM: return "grbcm";
        case Method::Barycenter: return "bar";
    }
    return "?";
}

const char* to_string(WeightFunctional f) {
    switch (f) {
        case WeightFunctional::Uniform: return "unif";
        case WeightFunctional::Variance: return "var";
        case WeightFunctional::DiffEntropy: return "entr";
        case WeightFunctional::Wasserstein: return "wass";
    }
    return "?";
}

const char* to_string(WeightTransform t) {
    return t == WeightTransform::Softmax ? "softmax" : "raw";
}

const char* to_string(BarycenterMode m) {
    return m == BarycenterMode::VarianceAverage ? "variance_average" : "exact_w2";
}

Method method_from_string(const std::string& s) {
    if (s == "poe") return Method::PoE;
    if (s == "gpoe") return Method::GPoE;
    if (s == "bcm") return Method::BCM;
    if (s == "rbcm") return Method::RBCM;
    if (s == "grbcm") return Method::GRBCM;
    if (s == "bar" || s == "barycenter") return Method::Barycenter;
    throw std::invalid_argument("unknown aggregation method: " + s);
}

WeightFunctional functional_from_string(const std::string& s) {
    if (s == "unif" || s == "uniform") return WeightFunctional::Uniform;
    if (s == "var" || s == "variance") return WeightFunctional::Variance;
    if (s == "entr" || s == "diff_entropy") return WeightFunctional::DiffEntropy;
    if (s == "wass" || s == "wasserstein") return WeightFunctional::Wasserstein;
    throw std::invalid_argument("unknown weighting functional: " + s);
}

WeightTransform transform_from_string(const std::string& s) {
    if (s == "softmax") return WeightTransform::Softmax;
    if (s == "raw") return WeightTransform::Raw;
    throw std::invalid_argument("unknown weight transform: " + s);
}

BarycenterMode barycenter_mode_from_string(const std::string& s) {
    if (s == "variance_average") return BarycenterMode::VarianceAverage;
    if (s == "exact_w2") return BarycenterMode::ExactW2;
    throw std::invalid_argument("unknown barycenter mode: " + s);
}

void WeightingSpec::validate() const {
    if (transform == WeightTransform::Softmax) {
        if (!(temperature >= 0.0))
            throw std::invalid_argument("WeightingSpec: softmax temperature must be >= 0");
        if (!normalized)
            throw std::invalid_argument("WeightingSpec: softmax weights are normalized by "
                                        "construction; normalized=false is not valid");
    } else {
        if (functional != WeightFunctional::DiffEntropy &&
            functional != WeightFunctional::Uniform)
            throw std::invalid_argument(
                "WeightingSpec: raw transform is only defined for the differential-entropy "
                "baseline and uniform weights");
        if (normalized)
            throw std::invalid_argument(
                "WeightingSpec: raw weights are the unnormalized classic baseline");
    }
}

void AggregationConfig::validate() const {
    weighting.validate();
}

std::string AggregationConfig::cell_id() const {
    std::ostringstream os;
    os << to_string(method);
    if (method != Method::PoE && method != Method::BCM) {
        os << "_" << to_string(weighting.functional);
        if (weighting.transform == WeightTransform::Softmax &&
            weighting.functional != WeightFunctional::Uniform)
            os << "_T" << weighting.temperature;
        if (weighting.transform == WeightTransform::Raw) os << "_raw";
    }
    if (method == Method::Barycenter && barycenter_mode == BarycenterMode::ExactW2)
        os << "_w2";
    os << "_" << to_string(space);
    return os.str();
}

void ExpertSlice::validate() const {
    if (size() < 1) throw std::invalid_argument("ExpertSlice: empty");
    if (variances.size() != size())
        throw std::invalid_argument("ExpertSlice: means/variances size mismatch");
    if (!means.allFinite()) throw std::invalid_argument("ExpertSlice: non-finite mean");
    if (!variances.allFinite() || (variances.array() <= 0.0).any())
        throw std::invalid_argument("ExpertSlice: variances must be strictly positive");
    if (!(prior_variance > 0.0) || !std::isfinite(prior_variance))
        throw std::invalid_argument("ExpertSlice: prior variance must be positive");
}

double w2_gaussian(double m1, double v1, double m2, double v2) {
    if (v1 < 0.0 || v2 < 0.0 || !std::isfinite(v1) || !std::isfinite(v2))
        throw std::invalid_argument("w2_gaussian: variances must be non-negative");
    const double dm = m1 - m2;
    const double ds = std::sqrt(v1) - std::sqrt(v2);
    return dm * dm + ds * ds;
}

Eigen::VectorXd psi(const ExpertSlice& slice, WeightFunctional functional) {
    slice.validate();
    const int J = slice.size();
    Eigen::VectorXd out(J);
    switch (functional) {
        case WeightFunctional::Uniform:
            out.setZero();
            break;
        case WeightFunctional::Variance:
            out = slice.variances;
            break;
        case WeightFunctional::DiffEntropy: {
            // Printed form 1/2(log s*^2 - log s_j^2) grows with confidence;
            // negated here so smaller psi = more confident, matching the
            // variance functional's direction inside the softmax.
            const double log_prior = std::log(slice.prior_variance);
            out = -0.5 * (log_prior - slice.variances.array().log());
            break;
        }
        case WeightFunctional::Wasserstein: {
            // Distance from the prior N(0, s*^2); farther = better informed.
            for (int j = 0; j < J; ++j)
                out(j) = -w2_gaussian(slice.means(j), slice.variances(j), 0.0,
                                      slice.prior_variance);
            break;
        }
    }
    return out;
}

Eigen::VectorXd weights(const Eigen::VectorXd& psi_values, const WeightingSpec& spec) {
    spec.validate();
    const int J = static_cast<int>(psi_values.size());
    if (J < 1) throw std::invalid_argument("weights: empty psi");
    if (!psi_values.allFinite())
        throw std::invalid_argument("weights: non-finite psi value");

    if (spec.functional == WeightFunctional::Uniform)
        return Eigen::VectorXd::Constant(J, spec.normalized ? 1.0 / J : 1.0);

    if (spec.transform == WeightTransform::Softmax) {
        const double shift = psi_values.minCoeff();
        Eigen::VectorXd b = (-spec.temperature * (psi_values.array() - shift)).exp();
        const double total = b.sum();
        if (!(total > 0.0) || !std::isfinite(total))
            throw std::invalid_argument("weights: softmax normalization failed");
        return b / total;
    }

    // Raw differential entropy: beta_j = 1/2(log s*^2 - log s_j^2) exactly as
    // printed (the classic unnormalized baseline). psi carries the negated
    // value, so flip it back.
    return -psi_values;
}

namespace {
GaussianPrediction product_form(const ExpertSlice& slice, const Eigen::VectorXd& beta,
                                double precision, Space space, const char* what) {
    if (!(precision > 0.0) || !std::isfinite(precision)) {
        std::ostringstream os;
        os << what << ": non-positive aggregate precision " << precision << " (J = "
           << slice.size() << ", prior variance " << slice.prior_variance
           << ", sum beta = " << beta.sum() << ")";
        throw NumericalError(os.str());
    }
    const double variance = 1.0 / precision;
    const double weighted_mean =
        (beta.array() * slice.means.array() / slice.variances.array()).sum();
    return {variance * weighted_mean, variance, space};
}
}  // namespace

GaussianPrediction aggregate_gpoe(const ExpertSlice& slice, const Eigen::VectorXd& beta,
                                  Space space) {
    slice.validate();
    if (beta.size() != slice.size())
        throw std::invalid_argument("aggregate_gpoe: beta size mismatch");
    if ((beta.array() < 0.0).any())
        throw std::invalid_argument("aggregate_gpoe: negative weight");
    const double precision = (beta.array() / slice.variances.array()).sum();
    return product_form(slice, beta, precision, space, "aggregate_gpoe");
}

GaussianPrediction aggregate_rbcm(const ExpertSlice& slice, const Eigen::VectorXd& beta,
                                  Space space) {
    slice.validate();
    if (beta.size() != slice.size())
        throw std::invalid_argument("aggregate_rbcm: beta size mismatch");
    const double prior_precision = 1.0 / slice.prior_variance;
    const double precision =
        (beta.array() * (slice.variances.array().inverse() - prior_precision)).sum() +
        prior_precision;
    return product_form(slice, beta, precision, space, "aggregate_rbcm");
}

GaussianPrediction aggregate_grbcm(const ExpertSlice& children, double master_mean,
                                   double master_variance, const Eigen::VectorXd& beta,
                                   Space space) {
    if (!(master_variance > 0.0) || !std::isfinite(master_variance))
        throw std::invalid_argument("aggregate_grbcm: master variance must be positive");
    if (children.size() == 0 && beta.size() == 0)
        return {master_mean, master_variance, space};
    children.validate();
    if (beta.size() != children.size())
        throw std::invalid_argument("aggregate_grbcm: beta size mismatch");

    const double master_precision = 1.0 / master_variance;
    const double beta_sum = beta.sum();
    const double precision =
        (beta.array() * (children.variances.array().inverse() - master_precision)).sum() +
        master_precision;
    if (!(precision > 0.0) || !std::isfinite(precision)) {
        std::ostringstream os;
        os << "aggregate_grbcm: non-positive aggregate precision " << precision
           << " (children = " << children.size() << ", master variance " << master_variance
           << ", sum beta = " << beta_sum << ")";
        throw NumericalError(os.str());
    }
    const double variance = 1.0 / precision;
    const double mean =
        variance *
        ((beta.array() * children.means.array() / children.variances.array()).sum() -
         (beta_sum - 1.0) * master_precision * master_mean);
    return {mean, variance, space};
}

GaussianPrediction aggregate_barycenter(const ExpertSlice& slice, const Eigen::VectorXd& beta,
                                        BarycenterMode mode, Space space) {
    slice.validate();
    if (beta.size() != slice.size())
        throw std::invalid_argument("aggregate_barycenter: beta size mismatch");
    if ((beta.array() < 0.0).any() || std::abs(beta.sum() - 1.0) > 1e-8)
        throw std::invalid_argument(
            "aggregate_barycenter: weights must be non-negative and sum to 1 (got sum " +
            std::to_string(beta.sum()) + ")");
    const double mean = beta.dot(slice.means);
    double variance;
    if (mode == BarycenterMode::VarianceAverage) {
        variance = beta.dot(slice.variances);
    } else {
        const double sd = (beta.array() * slice.variances.array().sqrt()).sum();
        variance = sd * sd;
    }
    return {mean, variance, space};
}

AggregateResult aggregate(const AggregationConfig& config, const ExpertSlice& slice) {
    config.validate();
    slice.validate();
    const int J = slice.size();

    AggregateResult out;
    if (config.method == Method::PoE || config.method == Method::BCM) {
        out.beta = Eigen::VectorXd::Ones(J);  // these models ignore the weighting
    } else {
        out.beta = weights(psi(slice, config.weighting.functional), config.weighting);
    }

    switch (config.method) {
        case Method::PoE:
        case Method::GPoE:
            out.prediction = aggregate_gpoe(slice, out.beta, config.space);
            break;
        case Method::BCM:
        case Method::RBCM:
            out.prediction = aggregate_rbcm(slice, out.beta, config.space);
            break;
        case Method::Barycenter:
            out.prediction =
                aggregate_barycenter(slice, out.beta, config.barycenter_mode, config.space);
            break;
        case Method::GRBCM:
            throw std::invalid_argument(
                "aggregate: grbcm needs the children/master overload");
    }
    return out;
}

AggregateResult aggregate(const AggregationConfig& config, const ExpertSlice& children,
                          double master_mean, double master_variance) {
    config.validate();
    if (config.method != Method::GRBCM)
        throw std::invalid_argument("aggregate: master/children overload is grbcm-only");
    AggregateResult out;
    if (children.size() == 0) {
        out.beta = Eigen::VectorXd();
        out.prediction = aggregate_grbcm(children, master_mean, master_variance, out.beta,
                                         config.space);
        return out;
    }
    out.beta = weights(psi(children, config.weighting.functional), config.weighting);
    out.beta(0) = 1.0;  // first child's weight fixed by convention
    out.prediction =
        aggregate_grbcm(children, master_mean, master_variance, out.beta, config.space);
    return out;
}

}  // namespace poegp
