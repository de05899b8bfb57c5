"""Input validation helpers and the error types raised on bad input."""

from __future__ import annotations

import numpy as np


class UsageError(ValueError):
    """The caller violated a precondition (bad config, bad data, bad dimensions)."""


class InstanceFormatError(UsageError):
    """An instance file could not be parsed; carries the offending line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DecompositionStateError(RuntimeError):
    """The caller fed the decomposition a point inconsistent with its state."""


def check_outcome_array(X, *, min_dim=2):
    """Coerce X to an (n, m) array of int64 outcome vectors.

    Accepts sequences of sequences or numpy arrays. Rejects non-integral
    values, wrong shapes and m < min_dim. Coordinates must stay small enough
    that exact integer scoring never overflows (|coord| < 2**40).
    """
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise UsageError(f"expected a 2-D array of outcome vectors, got ndim={arr.ndim}")
    if arr.shape[0] == 0:
        raise UsageError("outcome set must not be empty")
    if arr.shape[1] < min_dim:
        raise UsageError(f"need at least {min_dim} objectives, got m={arr.shape[1]}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.issubdtype(arr.dtype, np.floating):
            raise UsageError(f"outcome coordinates must be integers, got dtype {arr.dtype}")
        rounded = np.rint(arr)
        if not np.array_equal(rounded, arr):
            raise UsageError("outcome coordinates must be integer-valued; scale them to an integer grid first")
        arr = rounded
    arr = arr.astype(np.int64)
    if np.abs(arr).max(initial=0) >= 2**40:
        raise UsageError("outcome coordinates exceed the supported integer grid (|coord| < 2**40)")
    return arr


def check_positive_int(value, name):
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 1:
        raise UsageError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
