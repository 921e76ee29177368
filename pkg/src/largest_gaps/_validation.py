"""Input validation helpers shared by the functional API and the estimator."""

import numbers

import numpy as np


def check_binary_matrix(x, name="x"):
    """Return ``x`` as a C-contiguous 2-D ``uint8`` array with entries in {0, 1}.

    Raises
    ------
    ValueError
        If ``x`` is not two-dimensional, is empty along an axis, or holds
        a value other than 0 or 1.
    """
    arr = np.asarray(x)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column, got shape {arr.shape}")
    if arr.dtype == np.bool_:
        return np.ascontiguousarray(arr, dtype=np.uint8)
    if arr.dtype.kind not in "uif":
        raise ValueError(f"{name} must be numeric, got dtype {arr.dtype}")
    if arr.dtype != np.uint8:
        bad = (arr != 0) & (arr != 1)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise ValueError(f"{name} entries must be 0 or 1, found {arr[i, j]!r} at ({i}, {j})")
        return np.ascontiguousarray(arr, dtype=np.uint8)
    if arr.max() > 1:
        i, j = np.argwhere(arr > 1)[0]
        raise ValueError(f"{name} entries must be 0 or 1, found {arr[i, j]!r} at ({i}, {j})")
    return np.ascontiguousarray(arr)


def check_probability_vector(v, name, tol=1e-12):
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if abs(arr.sum() - 1.0) > tol:
        raise ValueError(f"{name} must sum to 1 within {tol:g}, sums to {arr.sum()!r}")
    return arr


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_threshold(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_permutation(perm, size, name):
    """Return ``perm`` as an int array after checking it is a bijection of ``range(size)``."""
    arr = np.asarray(perm)
    if arr.ndim != 1 or arr.size != size or arr.dtype.kind not in "iu":
        raise ValueError(f"{name} must be an integer vector of length {size}")
    if not np.array_equal(np.sort(arr), np.arange(size)):
        raise ValueError(f"{name} is not a bijection of 0..{size - 1}: {arr.tolist()}")
    return arr.astype(np.intp)
