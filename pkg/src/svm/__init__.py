"""Classical SVM over precomputed kernel matrices."""

from src.svm.smo import (
    DEFAULT_C,
    DEFAULT_TOL,
    SvmModel,
    decision_function,
    dual_objective,
    svm_predict,
    svm_predict_batch,
    svm_train,
    training_accuracy,
)

__all__ = [
    "DEFAULT_C",
    "DEFAULT_TOL",
    "SvmModel",
    "decision_function",
    "dual_objective",
    "svm_predict",
    "svm_predict_batch",
    "svm_train",
    "training_accuracy",
]
