"""The Largest Gaps procedure.

Rows are ordered by their normalised degree ``x_{i+} / d``; every gap
between consecutive sorted degrees that is strictly larger than the row
threshold starts a new row class. Columns are treated the same way with the
column threshold, and the block parameters are then estimated in closed form.
"""

from dataclasses import dataclass
import enum
import math
import time

import numpy as np

from ._validation import check_binary_matrix, check_threshold
from .estimation import estimate_parameters
from .model import LabelAssignment, LBMParameters


def row_means(x):
    """Normalised row degrees ``x_{i+} / d``.

    Sums are accumulated in integers and divided once, so the result is
    exact up to the final division.
    """
    x = check_binary_matrix(x)
    return x.sum(axis=1, dtype=np.int64) / x.shape[1]


def column_means(x):
    """Normalised column degrees ``x_{+j} / n``."""
    x = check_binary_matrix(x)
    return x.sum(axis=0, dtype=np.int64) / x.shape[0]


@dataclass(frozen=True, eq=False)
class GapProfile:
    """Sorted marginal means and the gaps between neighbours.

    ``sorted_values[p] == values[sort_permutation[p]]`` and
    ``gaps[p] == sorted_values[p + 1] - sorted_values[p]``.
    """

    sorted_values: np.ndarray
    sort_permutation: np.ndarray
    gaps: np.ndarray

    def __len__(self):
        return self.sorted_values.size


def build_gap_profile(values):
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("values must be a non-empty 1-D vector")
    if not np.all((values >= 0) & (values <= 1)):
        raise ValueError("values must lie in [0, 1]")
    order = np.argsort(values, kind="stable")
    sorted_values = values[order]
    return GapProfile(sorted_values, order, np.diff(sorted_values))


def _segment(profile, threshold):
    # cut after sorted position p whenever gaps[p] > threshold (strict)
    cuts = np.flatnonzero(profile.gaps > threshold)
    sorted_labels = np.zeros(len(profile), dtype=np.intp)
    sorted_labels[cuts + 1] = 1
    np.cumsum(sorted_labels, out=sorted_labels)
    labels = np.empty_like(sorted_labels)
    labels[profile.sort_permutation] = sorted_labels
    return cuts, LabelAssignment(labels, cuts.size + 1)


def cluster_1d(values, threshold):
    """Split ``values`` at every sorted gap strictly greater than ``threshold``.

    Classes are numbered ``0, 1, ...`` in increasing order of their values.

    Returns
    -------
    count : int
        Number of classes, one more than the number of cuts.
    labels : LabelAssignment
        Class of each entry of ``values`` in its original order.
    """
    threshold = check_threshold(threshold, "threshold")
    _, labels = _segment(build_gap_profile(values), threshold)
    return labels.class_count, labels


class ThresholdStrategy(enum.Enum):
    """Threshold schedules.

    ``CONSTANT`` is half the true degree separation and needs the model's
    key parameters. The three others depend only on the matrix shape; for
    rows, with ``c`` the number of rows and ``o`` the number of columns:

    * ``LOWER_LIMIT``: ``sqrt(2 log(c) / o + 1e-10)``
    * ``MIDDLE_LIMIT``: ``2 sqrt(2 log(c) / o)``
    * ``UPPER_LIMIT``: ``(log(c) / o) ** (1/4)``
    """

    CONSTANT = "S1"
    LOWER_LIMIT = "S2"
    MIDDLE_LIMIT = "S3"
    UPPER_LIMIT = "S4"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for member in cls:
            if text.upper() == member.value or text.lower() == member.name.lower():
                return member
        raise ValueError(
            f"unknown threshold strategy {value!r}; expected one of "
            + ", ".join(f"{m.value}/{m.name.lower()}" for m in cls)
        )


def threshold_value(strategy, count, opposite, key=None, axis="row"):
    """Threshold used to split ``count`` marginal means of length ``opposite``.

    Parameters
    ----------
    strategy : ThresholdStrategy or str
    count : int
        Number of rows (``axis="row"``) or columns being clustered.
    opposite : int
        Size of the other dimension.
    key : KeyParameters, optional
        Required by the constant strategy.
    axis : {"row", "column"}
    """
    strategy = ThresholdStrategy.parse(strategy)
    if axis not in ("row", "column"):
        raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")
    if strategy is ThresholdStrategy.CONSTANT:
        if key is None:
            raise ValueError("the constant threshold strategy needs the model's key parameters")
        delta = key.delta_pi if axis == "row" else key.delta_rho
        if not (math.isfinite(delta) and delta > 0):
            raise ValueError(f"constant threshold needs a finite positive separation, got {delta!r}")
        return delta / 2
    if count < 1 or opposite < 1:
        raise ValueError("count and opposite must be >= 1")
    ratio = math.log(count) / opposite
    if strategy is ThresholdStrategy.LOWER_LIMIT:
        value = math.sqrt(2 * ratio + 1e-10)
    elif strategy is ThresholdStrategy.MIDDLE_LIMIT:
        value = 2 * math.sqrt(2 * ratio)
    else:
        value = ratio ** 0.25
    if not value > 0:
        raise ValueError(f"{strategy.name.lower()} threshold is zero for a single {axis}")
    return value


@dataclass(frozen=True, eq=False)
class FitResult:
    """Output of :func:`largest_gaps_fit`."""

    g_hat: int
    m_hat: int
    z_hat: LabelAssignment
    w_hat: LabelAssignment
    theta_hat: LBMParameters
    s_g: float
    s_m: float
    cut_positions_rows: np.ndarray
    cut_positions_cols: np.ndarray
    fit_seconds: float = float("nan")

    def swapped(self):
        """The same fit with the roles of rows and columns exchanged."""
        theta = self.theta_hat
        return FitResult(
            g_hat=self.m_hat, m_hat=self.g_hat, z_hat=self.w_hat, w_hat=self.z_hat,
            theta_hat=LBMParameters(theta.rho, theta.pi, theta.alpha.T),
            s_g=self.s_m, s_m=self.s_g,
            cut_positions_rows=self.cut_positions_cols, cut_positions_cols=self.cut_positions_rows,
            fit_seconds=self.fit_seconds,
        )

    def to_dict(self):
        return {
            "g_hat": self.g_hat,
            "m_hat": self.m_hat,
            "z_hat": self.z_hat.labels.tolist(),
            "w_hat": self.w_hat.labels.tolist(),
            "pi_hat": self.theta_hat.pi.tolist(),
            "rho_hat": self.theta_hat.rho.tolist(),
            "alpha_hat": self.theta_hat.alpha.tolist(),
            "s_g": self.s_g,
            "s_m": self.s_m,
            "cut_positions_rows": self.cut_positions_rows.tolist(),
            "cut_positions_cols": self.cut_positions_cols.tolist(),
        }

    @classmethod
    def from_dict(cls, doc):
        z = LabelAssignment(np.asarray(doc["z_hat"], dtype=np.intp), doc["g_hat"])
        w = LabelAssignment(np.asarray(doc["w_hat"], dtype=np.intp), doc["m_hat"])
        return cls(
            g_hat=int(doc["g_hat"]), m_hat=int(doc["m_hat"]), z_hat=z, w_hat=w,
            theta_hat=LBMParameters(doc["pi_hat"], doc["rho_hat"], doc["alpha_hat"]),
            s_g=float(doc["s_g"]), s_m=float(doc["s_m"]),
            cut_positions_rows=np.asarray(doc.get("cut_positions_rows", []), dtype=np.intp),
            cut_positions_cols=np.asarray(doc.get("cut_positions_cols", []), dtype=np.intp),
        )


def largest_gaps_fit(x, s_g, s_m):
    """Co-cluster the binary matrix ``x`` with row/column thresholds ``s_g``/``s_m``.

    One pass over ``x`` computes both marginals, sorting costs
    ``O(n log n + d log d)`` and the block estimation is one more pass.
    """
    start = time.perf_counter()
    x = check_binary_matrix(x)
    s_g = check_threshold(s_g, "s_g")
    s_m = check_threshold(s_m, "s_m")
    n, d = x.shape
    row_cuts, z_hat = _segment(build_gap_profile(x.sum(axis=1, dtype=np.int64) / d), s_g)
    col_cuts, w_hat = _segment(build_gap_profile(x.sum(axis=0, dtype=np.int64) / n), s_m)
    theta = estimate_parameters(x, z_hat, w_hat)
    return FitResult(
        g_hat=z_hat.class_count, m_hat=w_hat.class_count, z_hat=z_hat, w_hat=w_hat,
        theta_hat=theta, s_g=s_g, s_m=s_m,
        cut_positions_rows=row_cuts, cut_positions_cols=col_cuts,
        fit_seconds=time.perf_counter() - start,
    )
