"""Python bindings for the skelimg landmark-to-image pipeline."""

import json as _json

from ._skelimg import (
    Error,
    IoError,
    OrderingError,
    RangeError,
    SchemaError,
    Sequence,
    ValidationError,
    __version__,
    apply_selection,
    augment,
    builtin_strategies,
    encode,
    impute,
    manifest_ids,
    mean_sd,
    parse_sequence,
    read_sequence,
    write_sequence,
)
from . import _skelimg


def make_split_plan(signers):
    """Nested leave-one-person-out plan as a dict."""
    return _json.loads(_skelimg.make_split_plan(list(signers)))


def compute_metrics(truth, predicted, classes=None):
    """Accuracy, per-class and macro precision/recall/F1 as a dict."""
    if classes is None:
        classes = sorted(set(truth) | set(predicted))
    return _json.loads(_skelimg.compute_metrics(list(truth), list(predicted), list(classes)))


def compare_bench_reports(candidate, baseline):
    """Per-stage and end-to-end speed-up of `candidate` over `baseline` (dicts)."""
    return _json.loads(
        _skelimg.compare_bench_reports(_json.dumps(candidate), _json.dumps(baseline)))


__all__ = [
    "Error", "IoError", "OrderingError", "RangeError", "SchemaError", "Sequence",
    "ValidationError", "apply_selection", "augment", "builtin_strategies",
    "compare_bench_reports", "compute_metrics", "encode", "impute",
    "make_split_plan", "manifest_ids", "mean_sd", "parse_sequence",
    "read_sequence", "write_sequence",
]
