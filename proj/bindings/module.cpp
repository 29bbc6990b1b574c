#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "poegp/aggregate.hpp"
#include "poegp/bench.hpp"
#include "poegp/ensemble.hpp"
#include "poegp/gp.hpp"
#include "poegp/version.hpp"

namespace py = pybind11;
using namespace poegp;

namespace {

Hyperparameters resolve_init(const Dataset& data, const std::optional<Hyperparameters>& init) {
    return init ? *init : default_init(data);
}

FitOptions make_fit_options(int max_iters, double grad_tol) {
    FitOptions o;
    o.lbfgs.max_iters = max_iters;
    o.lbfgs.grad_tol = grad_tol;
    return o;
}

py::dict fit_info_dict(const FitResult& r) {
    py::dict d;
    d["lml"] = r.lml;
    d["iterations"] = r.iterations;
    d["converged"] = r.converged;
    d["line_search_failed"] = r.line_search_failed;
    d["lml_trace"] = r.lml_trace;
    return d;
}

ExpertSlice make_slice(const Eigen::VectorXd& means, const Eigen::VectorXd& variances,
                       double prior_variance) {
    ExpertSlice s;
    s.means = means;
    s.variances = variances;
    s.prior_variance = prior_variance;
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Product-of-experts Gaussian process regression core";
    m.attr("__version__") = POEGP_VERSION;

    py::enum_<Space>(m, "Space").value("F", Space::F).value("Y", Space::Y);
    py::enum_<Method>(m, "Method")
        .value("POE", Method::PoE)
        .value("GPOE", Method::GPoE)
        .value("BCM", Method::BCM)
        .value("RBCM", Method::RBCM)
        .value("GRBCM", Method::GRBCM)
        .value("BARYCENTER", Method::Barycenter);
    py::enum_<WeightFunctional>(m, "WeightFunctional")
        .value("UNIFORM", WeightFunctional::Uniform)
        .value("VARIANCE", WeightFunctional::Variance)
        .value("DIFF_ENTROPY", WeightFunctional::DiffEntropy)
        .value("WASSERSTEIN", WeightFunctional::Wasserstein);
    py::enum_<WeightTransform>(m, "WeightTransform")
        .value("SOFTMAX", WeightTransform::Softmax)
        .value("RAW", WeightTransform::Raw);
    py::enum_<BarycenterMode>(m, "BarycenterMode")
        .value("VARIANCE_AVERAGE", BarycenterMode::VarianceAverage)
        .value("EXACT_W2", BarycenterMode::ExactW2);
    py::enum_<PartitionStrategy>(m, "PartitionStrategy")
        .value("RANDOM", PartitionStrategy::Random)
        .value("KMEANS", PartitionStrategy::KMeans);

    py::class_<Hyperparameters>(m, "Hyperparameters")
        .def(py::init([](const Eigen::VectorXd& log_lengthscales, double log_signal_std,
                         double log_noise_std) {
                 Hyperparameters h(static_cast<int>(log_lengthscales.size()));
                 h.log_lengthscales = log_lengthscales;
                 h.log_signal_std = log_signal_std;
                 h.log_noise_std = log_noise_std;
                 h.validate();
                 return h;
             }),
             py::arg("log_lengthscales"), py::arg("log_signal_std") = 0.0,
             py::arg("log_noise_std") = std::log(0.1))
        .def_readwrite("log_lengthscales", &Hyperparameters::log_lengthscales)
        .def_readwrite("log_signal_std", &Hyperparameters::log_signal_std)
        .def_readwrite("log_noise_std", &Hyperparameters::log_noise_std)
        .def_property_readonly("lengthscales", &Hyperparameters::lengthscales)
        .def_property_readonly("signal_std", &Hyperparameters::signal_std)
        .def_property_readonly("noise_std", &Hyperparameters::noise_std)
        .def("__repr__", [](const Hyperparameters& h) {
            return "Hyperparameters(dim=" + std::to_string(h.dim()) +
                   ", signal_std=" + std::to_string(h.signal_std()) +
                   ", noise_std=" + std::to_string(h.noise_std()) + ")";
        });

    py::class_<Dataset, std::shared_ptr<Dataset>>(m, "Dataset")
        .def(py::init<Eigen::MatrixXd, Eigen::VectorXd>(), py::arg("X"), py::arg("y"))
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("dim", &Dataset::dim)
        .def_readonly("X", &Dataset::X)
        .def_readonly("y", &Dataset::y)
        .def_readonly("target_mean", &Dataset::target_mean)
        .def_readonly("target_std", &Dataset::target_std);

    py::class_<Partition>(m, "Partition")
        .def_readonly("assignments", &Partition::assignments)
        .def_readonly("num_experts", &Partition::num_experts)
        .def_property_readonly("sizes", &Partition::group_sizes);

    py::class_<TrainedGP>(m, "TrainedGP")
        .def_property_readonly("hyp", [](const TrainedGP& g) { return g.hyp; })
        .def_property_readonly("jitter", [](const TrainedGP& g) { return g.factor.jitter; })
        .def(
            "predict",
            [](const TrainedGP& g, const Eigen::MatrixXd& X, Space space) {
                Eigen::VectorXd mean, var;
                predict_batch(g, X, space, mean, var);
                return py::make_tuple(mean, var);
            },
            py::arg("X"), py::arg("space") = Space::Y,
            "Batched posterior prediction; returns (means, variances).");

    py::class_<ExpertPool>(m, "ExpertPool")
        .def_property_readonly("shared_hyp", [](const ExpertPool& p) { return p.shared_hyp; })
        .def_property_readonly("num_experts", &ExpertPool::num_experts)
        .def_property_readonly("expert_sizes",
                               [](const ExpertPool& p) { return p.partition.group_sizes(); })
        .def_property_readonly("lml", [](const ExpertPool& p) { return p.fit_info.lml; })
        .def_property_readonly("fit_info",
                               [](const ExpertPool& p) { return fit_info_dict(p.fit_info); })
        .def(
            "predict_experts",
            [](const ExpertPool& p, const Eigen::MatrixXd& X, Space space, int threads) {
                const ExpertPredictions e = predict_experts(p, X, space, threads);
                return py::make_tuple(e.means, e.variances, e.prior_variance);
            },
            py::arg("X"), py::arg("space") = Space::F, py::arg("threads") = 0,
            "Per-expert predictions: (means t x J, variances t x J, prior_variance t).")
        .def(
            "build_grbcm",
            [](ExpertPool& p, double master_fraction, uint64_t seed, int threads) {
                build_grbcm(p, master_fraction, seed, threads);
            },
            py::arg("master_fraction") = 0.0, py::arg("seed") = 0, py::arg("threads") = 0)
        .def(
            "predict_grbcm",
            [](const ExpertPool& p, const Eigen::MatrixXd& X, Space space, int threads) {
                const GrbcmPredictions g = predict_grbcm(p, X, space, threads);
                return py::make_tuple(g.child_means, g.child_variances, g.master_mean,
                                      g.master_variance);
            },
            py::arg("X"), py::arg("space") = Space::F, py::arg("threads") = 0);

    m.def("kernel_matrix", &kernel_matrix, py::arg("X1"), py::arg("X2"), py::arg("hyp"),
          "ARD squared-exponential covariance between two point sets.");
    m.def("w2_gaussian", &w2_gaussian, py::arg("m1"), py::arg("v1"), py::arg("m2"),
          py::arg("v2"), "Squared 2-Wasserstein distance between scalar Gaussians.");
    m.def("log_marginal_likelihood",
          [](const std::shared_ptr<Dataset>& d, const Hyperparameters& h) {
              return log_marginal_likelihood(*d, h);
          },
          py::arg("data"), py::arg("hyp"));
    m.def("lml_gradient",
          [](const std::shared_ptr<Dataset>& d, const Hyperparameters& h) {
              return lml_gradient(*d, h);
          },
          py::arg("data"), py::arg("hyp"),
          "Gradient w.r.t. [log lengthscales..., log signal std, log noise std].");
    m.def("nlpd",
          [](double mean, double variance, double y_true) {
              return nlpd({mean, variance, Space::Y}, y_true);
          },
          py::arg("mean"), py::arg("variance"), py::arg("y_true"));
    m.def("rmse", &rmse, py::arg("predictions"), py::arg("targets"));

    m.def(
        "fit",
        [](const std::shared_ptr<Dataset>& d, const std::optional<Hyperparameters>& init,
           int max_iters, double grad_tol) {
            const FitResult r = fit(*d, resolve_init(*d, init),
                                    make_fit_options(max_iters, grad_tol));
            return py::make_tuple(r.hyp, fit_info_dict(r));
        },
        py::arg("data"), py::arg("init") = std::nullopt, py::arg("max_iters") = 100,
        py::arg("grad_tol") = 1e-6,
        "Maximize the log-marginal likelihood; returns (hyp, info).");

    m.def(
        "train_gp",
        [](const std::shared_ptr<Dataset>& d, const Hyperparameters& h) {
            return train_gp(d, h);
        },
        py::arg("data"), py::arg("hyp"),
        "Factorize an exact GP at fixed hyperparameters.");

    m.def("random_partition", &random_partition, py::arg("n"), py::arg("points_per_expert"),
          py::arg("seed") = 0);
    m.def(
        "kmeans_partition",
        [](const Eigen::MatrixXd& X, int ppe, uint64_t seed, int max_iter) {
            return kmeans_partition(X, ppe, seed, max_iter);
        },
        py::arg("X"), py::arg("points_per_expert"), py::arg("seed") = 0,
        py::arg("max_iter") = 100);

    m.def(
        "train_pool",
        [](const std::shared_ptr<Dataset>& d, const Partition& part,
           const std::optional<Hyperparameters>& init, int max_iters, double grad_tol,
           int threads) {
            TrainOptions opts;
            opts.fit = make_fit_options(max_iters, grad_tol);
            opts.threads = threads;
            return train_pool(d, part, resolve_init(*d, init), opts);
        },
        py::arg("data"), py::arg("partition"), py::arg("init") = std::nullopt,
        py::arg("max_iters") = 100, py::arg("grad_tol") = 1e-6, py::arg("threads") = 0,
        "Train experts with shared hyperparameters on the summed marginal likelihood.");

    m.def(
        "psi_values",
        [](const Eigen::VectorXd& means, const Eigen::VectorXd& variances,
           double prior_variance, WeightFunctional functional) {
            return psi(make_slice(means, variances, prior_variance), functional);
        },
        py::arg("means"), py::arg("variances"), py::arg("prior_variance"),
        py::arg("functional") = WeightFunctional::Variance,
        "Per-expert confidence values (smaller = more confident).");

    m.def(
        "softmax_weights",
        [](const Eigen::VectorXd& psi_values, double temperature) {
            WeightingSpec spec;
            spec.transform = WeightTransform::Softmax;
            spec.temperature = temperature;
            return weights(psi_values, spec);
        },
        py::arg("psi"), py::arg("temperature"),
        "Normalized tempered-softmax weights beta_j from confidence values.");

    m.def(
        "aggregate_slice",
        [](const Eigen::VectorXd& means, const Eigen::VectorXd& variances,
           double prior_variance, Method method, WeightFunctional functional,
           WeightTransform transform, double temperature, bool normalized, Space space,
           BarycenterMode barycenter_mode, std::optional<double> master_mean,
           std::optional<double> master_variance) {
            AggregationConfig cfg;
            cfg.method = method;
            cfg.weighting.functional = functional;
            cfg.weighting.transform = transform;
            cfg.weighting.temperature = temperature;
            cfg.weighting.normalized = normalized;
            cfg.space = space;
            cfg.barycenter_mode = barycenter_mode;
            const ExpertSlice slice = make_slice(means, variances, prior_variance);
            const AggregateResult r =
                method == Method::GRBCM
                    ? aggregate(cfg, slice, master_mean.value(), master_variance.value())
                    : aggregate(cfg, slice);
            return py::make_tuple(r.prediction.mean, r.prediction.variance, r.beta);
        },
        py::arg("means"), py::arg("variances"), py::arg("prior_variance"), py::arg("method"),
        py::arg("functional") = WeightFunctional::Variance,
        py::arg("transform") = WeightTransform::Softmax, py::arg("temperature") = 100.0,
        py::arg("normalized") = true, py::arg("space") = Space::F,
        py::arg("barycenter_mode") = BarycenterMode::VarianceAverage,
        py::arg("master_mean") = std::nullopt, py::arg("master_variance") = std::nullopt,
        "Combine one test point's expert predictions; returns (mean, variance, beta). For "
        "grbcm the slice holds the augmented children and prior_variance the master's "
        "variance.");

    m.def("synth_1d", &synth_1d, py::arg("n"), py::arg("seed") = 0,
          py::arg("noise_std") = 0.1, "The 1-D gap benchmark dataset.");

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
}
