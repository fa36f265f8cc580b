"""wisardkit: RAM-based weightless neural network (WiSARD) classification.

The pipeline: real-valued feature vectors are binarized against their own
mean, padded so the tuple size divides the retina, and presented to a bank
of sparse RAM neurons grouped into per-class discriminators.  A grouped
leave-one-out harness evaluates the classifier and sweeps the bits-per-RAM
parameter.
"""

from wisardkit.dataset import (
    Dataset,
    FeatureFileError,
    Fold,
    FoldPlan,
    FoldPlanError,
    load_feature_file,
    make_loo_plan,
    write_feature_file,
)
from wisardkit.encoding import (
    EncodingError,
    FeatureVector,
    binarize_mean_threshold,
    pad_to_multiple,
)
from wisardkit.evaluation import (
    AccuracyResult,
    ConfusionMatrix,
    CrossValResult,
    EvaluationError,
    SweepRow,
    accuracy,
    emit_report,
    run_cross_validation,
    run_perceptron_cross_validation,
    sweep_tuple_size,
)
from wisardkit.perceptron import Perceptron
from wisardkit.wnn import (
    Classification,
    ModelFormatError,
    ModelInvariantError,
    ModelTruncatedError,
    ModelVersionError,
    Response,
    TupleMapping,
    WisardConfig,
    WisardModel,
    build_mapping,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyResult",
    "Classification",
    "ConfusionMatrix",
    "CrossValResult",
    "Dataset",
    "EncodingError",
    "EvaluationError",
    "FeatureFileError",
    "FeatureVector",
    "Fold",
    "FoldPlan",
    "FoldPlanError",
    "ModelFormatError",
    "ModelInvariantError",
    "ModelTruncatedError",
    "ModelVersionError",
    "Perceptron",
    "Response",
    "SweepRow",
    "TupleMapping",
    "WisardConfig",
    "WisardModel",
    "accuracy",
    "binarize_mean_threshold",
    "build_mapping",
    "emit_report",
    "load_feature_file",
    "make_loo_plan",
    "pad_to_multiple",
    "run_cross_validation",
    "run_perceptron_cross_validation",
    "sweep_tuple_size",
    "write_feature_file",
]
