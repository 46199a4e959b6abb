"""RBM virtual-example generation and reconstruction-error distribution scoring."""

from ._rbmve import (
    AdmBand,
    AdmValue,
    DistributionSpec,
    Error,
    ExperimentReport,
    Rbm,
    TrainResult,
    VeResult,
    __version__,
    adm_between,
    auto_tolerance,
    classify_band,
    compute_adm,
    compute_histograms,
    dataset_mse,
    generate_synthetic,
    generate_virtual_examples,
    hidden_activations,
    load_csv,
    per_example_sse,
    reconstruct,
    run_experiment,
    sample_uniform,
    save_csv,
    sigmoid,
    train_cd1,
    visible_reconstruction,
)

__all__ = [
    "AdmBand",
    "AdmValue",
    "DistributionSpec",
    "Error",
    "ExperimentReport",
    "Rbm",
    "TrainResult",
    "VeResult",
    "__version__",
    "adm_between",
    "auto_tolerance",
    "classify_band",
    "compute_adm",
    "compute_histograms",
    "dataset_mse",
    "generate_synthetic",
    "generate_virtual_examples",
    "hidden_activations",
    "load_csv",
    "per_example_sse",
    "reconstruct",
    "run_experiment",
    "sample_uniform",
    "save_csv",
    "sigmoid",
    "train_cd1",
    "visible_reconstruction",
]
