"""Closed-form block model estimates from a pair of labellings."""

import numpy as np

from ._validation import check_binary_matrix
from .model import LBMParameters


class EmptyClassError(ValueError):
    def __init__(self, axis, index):
        self.axis = axis
        self.index = index
        super().__init__(f"{axis} class {index} has no members")


def block_sums(x, z, w):
    """Integer count of ones in every (row class, column class) block."""
    g, m = z.class_count, w.class_count
    per_row_class = np.zeros((g, x.shape[1]), dtype=np.int64)
    for k in range(g):
        x[z.labels == k].sum(axis=0, dtype=np.int64, out=per_row_class[k])
    sums = np.zeros((g, m), dtype=np.int64)
    for l in range(m):
        per_row_class[:, w.labels == l].sum(axis=1, out=sums[:, l])
    return sums


def estimate_parameters(x, z, w):
    """Estimate ``(pi, rho, alpha)`` given row labels ``z`` and column labels ``w``.

    ``pi_k`` and ``rho_l`` are class frequencies and ``alpha_kl`` is the
    mean of ``x`` over block ``(k, l)``.

    Raises
    ------
    EmptyClassError
        If a class of ``z`` or ``w`` has no member.
    ValueError
        If the label lengths do not match the shape of ``x``.
    """
    x = check_binary_matrix(x)
    n, d = x.shape
    if len(z) != n:
        raise ValueError(f"row labels have length {len(z)}, x has {n} rows")
    if len(w) != d:
        raise ValueError(f"column labels have length {len(w)}, x has {d} columns")
    row_sizes = z.sizes()
    col_sizes = w.sizes()
    for axis, sizes in (("row", row_sizes), ("column", col_sizes)):
        empty = np.flatnonzero(sizes == 0)
        if empty.size:
            raise EmptyClassError(axis, int(empty[0]))
    sums = block_sums(x, z, w)
    alpha = sums / np.outer(row_sizes, col_sizes)
    return LBMParameters(row_sizes / n, col_sizes / d, alpha)
