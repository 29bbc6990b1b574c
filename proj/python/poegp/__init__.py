"""Scalable Gaussian process regression via products of local experts.

Exact GP experts share hyperparameters trained on the summed marginal
likelihood; their per-point Gaussian predictions are combined with
product-of-experts rules (PoE, gPoE, BCM, rBCM, grBCM) or a Wasserstein
barycenter, with tempered-softmax confidence weights.
"""

from ._core import (  # noqa: F401
    BarycenterMode,
    Dataset,
    ExpertPool,
    Hyperparameters,
    Method,
    Space,
    TrainedGP,
    WeightFunctional,
    WeightTransform,
    __version__,
    aggregate_slice,
    fit,
    kernel_matrix,
    kmeans_partition,
    log_marginal_likelihood,
    lml_gradient,
    nlpd,
    psi_values,
    random_partition,
    rmse,
    softmax_weights,
    synth_1d,
    train_gp,
    train_pool,
    w2_gaussian,
)

__all__ = [
    "BarycenterMode",
    "Dataset",
    "ExpertPool",
    "Hyperparameters",
    "Method",
    "Space",
    "TrainedGP",
    "WeightFunctional",
    "WeightTransform",
    "__version__",
    "aggregate_slice",
    "fit",
    "kernel_matrix",
    "kmeans_partition",
    "log_marginal_likelihood",
    "lml_gradient",
    "nlpd",
    "psi_values",
    "random_partition",
    "rmse",
    "softmax_weights",
    "synth_1d",
    "train_gp",
    "train_pool",
    "w2_gaussian",
]
