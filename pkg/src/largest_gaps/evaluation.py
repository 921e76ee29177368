"""Comparison of estimated and true co-clusterings up to label switching."""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._validation import check_permutation


@dataclass(frozen=True, eq=False)
class AlignmentResult:
    """Best matching between an estimated and a true labelling.

    ``permutation[k]`` is the estimated class matched with true class
    ``k``, so that ``estimated.labels[i] == permutation[truth.labels[i]]``
    for every ``i`` when ``equivalent`` is true. It is ``None`` when the
    class counts differ.
    """

    equivalent: bool
    permutation: np.ndarray | None
    agreement: float


def confusion_matrix(truth, estimated):
    """Counts ``C[k, k']`` of indices with true class ``k`` and estimated class ``k'``."""
    c = np.zeros((truth.class_count, estimated.class_count), dtype=np.int64)
    np.add.at(c, (truth.labels, estimated.labels), 1)
    return c


def align_labels(estimated, truth):
    """Find the class bijection maximising agreement between two labellings.

    The bijection is a maximum-weight matching on the confusion matrix.
    Labellings with different class counts are never equivalent.
    """
    if len(estimated) != len(truth):
        raise ValueError(f"labellings differ in length: {len(estimated)} != {len(truth)}")
    if estimated.class_count != truth.class_count:
        return AlignmentResult(False, None, 0.0)
    counts = confusion_matrix(truth, estimated)
    rows, cols = linear_sum_assignment(counts, maximize=True)
    perm = np.empty(truth.class_count, dtype=np.intp)
    perm[rows] = cols
    n = len(truth)
    matched = int(counts[rows, cols].sum())
    agreement = matched / n if n else 1.0
    return AlignmentResult(matched == n, perm, agreement)


def dinf_distance(theta_a, theta_b, row_perm=None, col_perm=None):
    """Sup-norm distance between ``theta_a`` relabelled by ``(row_perm, col_perm)`` and ``theta_b``.

    Returns ``inf`` when the class counts differ. Missing permutations
    default to the identity.
    """
    if (theta_a.g, theta_a.m) != (theta_b.g, theta_b.m):
        return math.inf
    row_perm = np.arange(theta_a.g) if row_perm is None else check_permutation(row_perm, theta_a.g, "row_perm")
    col_perm = np.arange(theta_a.m) if col_perm is None else check_permutation(col_perm, theta_a.m, "col_perm")
    a = theta_a.permuted(row_perm, col_perm)
    return float(max(
        np.max(np.abs(a.pi - theta_b.pi)),
        np.max(np.abs(a.rho - theta_b.rho)),
        np.max(np.abs(a.alpha - theta_b.alpha)),
    ))


@dataclass(frozen=True)
class JointEvent:
    """Sub-events of a failed co-clustering; ``failure`` is their union."""

    g_wrong: bool
    m_wrong: bool
    z_not_equivalent: bool
    w_not_equivalent: bool
    dinf: float
    dinf_exceeds: bool
    failure: bool

    def to_dict(self):
        return dict(self.__dict__)


def joint_success(fit, truth_z, truth_w, truth_theta, t):
    """Evaluate the compound failure event of a fit against the truth.

    ``dinf`` uses the alignment permutations whenever class counts match;
    ``dinf_exceeds`` is forced true when either labelling is not equivalent.
    """
    z_align = align_labels(fit.z_hat, truth_z)
    w_align = align_labels(fit.w_hat, truth_w)
    g_wrong = fit.g_hat != truth_theta.g
    m_wrong = fit.m_hat != truth_theta.m
    if z_align.permutation is not None and w_align.permutation is not None and not (g_wrong or m_wrong):
        dinf = dinf_distance(fit.theta_hat, truth_theta, z_align.permutation, w_align.permutation)
    else:
        dinf = math.inf
    both = z_align.equivalent and w_align.equivalent
    exceeds = (not both) or dinf > t
    return JointEvent(
        g_wrong=g_wrong,
        m_wrong=m_wrong,
        z_not_equivalent=not z_align.equivalent,
        w_not_equivalent=not w_align.equivalent,
        dinf=dinf,
        dinf_exceeds=exceeds,
        failure=g_wrong or m_wrong or exceeds,
    )
