"""Latent Block Model parameter space, separability quantities and sampler.

Class indices are 0-based everywhere. A labelling of ``n`` rows into ``g``
classes is carried by :class:`LabelAssignment`; the binary indicator-matrix
form used in the literature is available through
:meth:`LabelAssignment.to_indicator` / :meth:`LabelAssignment.from_indicator`.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from ._validation import check_positive_int

PROBABILITY_SUM_TOL = 1e-12
RNG_NAME = "numpy.random.PCG64"

# rows of x drawn per chunk while sampling; bounds peak memory to ~8 MB of uniforms
_SAMPLE_CHUNK_ENTRIES = 1 << 20


class InvalidParametersError(ValueError):
    """Raised when an :class:`LBMParameters` instance violates its constraints."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(c.detail for c in report.failures))


def _frozen(a, dtype=float):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LBMParameters:
    """Parameters ``(pi, rho, alpha)`` of a binary Latent Block Model.

    Parameters
    ----------
    pi : array-like of shape (g,)
        Row class proportions.
    rho : array-like of shape (m,)
        Column class proportions.
    alpha : array-like of shape (g, m)
        Bernoulli mean of every (row class, column class) block.

    Only shapes are enforced on construction; value constraints are checked
    by :func:`validate_parameters` so that invalid configurations can be
    reported rather than silently repaired.
    """

    pi: np.ndarray
    rho: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        pi = _frozen(self.pi)
        rho = _frozen(self.rho)
        alpha = _frozen(self.alpha)
        if pi.ndim != 1 or pi.size == 0:
            raise ValueError("pi must be a non-empty vector")
        if rho.ndim != 1 or rho.size == 0:
            raise ValueError("rho must be a non-empty vector")
        if alpha.shape != (pi.size, rho.size):
            raise ValueError(
                f"alpha must have shape (g, m) = ({pi.size}, {rho.size}), got {alpha.shape}"
            )
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "alpha", alpha)

    @property
    def g(self):
        return self.pi.size

    @property
    def m(self):
        return self.rho.size

    def permuted(self, row_perm, col_perm):
        """Return the parameter with coordinates ``k -> row_perm[k]``, ``l -> col_perm[l]``.

        Position ``k`` of the result holds ``pi[row_perm[k]]`` and position
        ``(k, l)`` holds ``alpha[row_perm[k], col_perm[l]]``.
        """
        row_perm = np.asarray(row_perm, dtype=np.intp)
        col_perm = np.asarray(col_perm, dtype=np.intp)
        return LBMParameters(
            self.pi[row_perm], self.rho[col_perm], self.alpha[np.ix_(row_perm, col_perm)]
        )

    def to_dict(self):
        return {
            "g": self.g,
            "m": self.m,
            "pi": self.pi.tolist(),
            "rho": self.rho.tolist(),
            "alpha": self.alpha.tolist(),
        }

    @classmethod
    def from_dict(cls, doc):
        params = cls(doc["pi"], doc["rho"], doc["alpha"])
        for key, actual in (("g", params.g), ("m", params.m)):
            if key in doc and doc[key] != actual:
                raise ValueError(f"{key}={doc[key]} disagrees with the vector lengths ({actual})")
        return params


@dataclass(frozen=True, eq=False)
class LabelAssignment:
    """Class index of every row (or column), together with the class count."""

    labels: np.ndarray
    class_count: int

    def __post_init__(self):
        labels = np.array(self.labels, copy=True)
        if labels.ndim != 1:
            raise ValueError("labels must be a 1-D vector")
        if labels.size and labels.dtype.kind not in "iu":
            raise ValueError(f"labels must be integers, got dtype {labels.dtype}")
        labels = labels.astype(np.intp)
        count = check_positive_int(self.class_count, "class_count")
        if labels.size and (labels.min() < 0 or labels.max() >= count):
            raise ValueError(f"labels must lie in 0..{count - 1}")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_count", count)

    def __len__(self):
        return self.labels.size

    def __eq__(self, other):
        if not isinstance(other, LabelAssignment):
            return NotImplemented
        return self.class_count == other.class_count and np.array_equal(self.labels, other.labels)

    __hash__ = None

    def sizes(self):
        """Number of members of every class (``z_{+k}``)."""
        return np.bincount(self.labels, minlength=self.class_count)

    def to_indicator(self):
        z = np.zeros((self.labels.size, self.class_count), dtype=np.uint8)
        z[np.arange(self.labels.size), self.labels] = 1
        return z

    @classmethod
    def from_indicator(cls, z):
        z = np.asarray(z)
        if z.ndim != 2:
            raise ValueError("indicator matrix must be 2-D")
        if not np.all((z == 0) | (z == 1)) or not np.all(z.sum(axis=1) == 1):
            raise ValueError("every indicator row must contain exactly one 1")
        return cls(np.argmax(z, axis=1), z.shape[1])


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str
    value: object = None


@dataclass(frozen=True)
class Report:
    """Pass/fail outcome of a list of named checks."""

    checks: tuple = field(default_factory=tuple)

    @property
    def valid(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def raise_if_invalid(self):
        if not self.valid:
            raise InvalidParametersError(self)


@dataclass(frozen=True)
class KeyParameters:
    """Separability quantities derived from an :class:`LBMParameters`.

    ``tau[k]`` is the expected normalised degree of a row of class ``k``
    and ``xi[l]`` the one of a column of class ``l``. ``delta_pi`` and
    ``delta_rho`` are the smallest pairwise gaps between them
    (``inf`` for a single class).
    """

    tau: np.ndarray
    xi: np.ndarray
    delta_pi: float
    delta_rho: float
    pi_min: float
    rho_min: float

    @property
    def g(self):
        return self.tau.size

    @property
    def m(self):
        return self.xi.size


def validate_parameters(params):
    """Check the constraints of ``params`` and return a :class:`Report`."""
    checks = []
    for name, vec in (("pi", params.pi), ("rho", params.rho)):
        total = float(vec.sum())
        ok = bool(np.all(np.isfinite(vec))) and abs(total - 1.0) <= PROBABILITY_SUM_TOL
        checks.append(Check(
            f"{name}_sums_to_one", ok,
            f"{name} sums to {total!r}" + ("" if ok else f", must equal 1 within {PROBABILITY_SUM_TOL:g}"),
            total,
        ))
        nonpos = np.flatnonzero(~(vec > 0))
        ok = nonpos.size == 0
        detail = (
            f"all {name} entries positive" if ok
            else f"zero proportion: {name}[{nonpos[0]}] = {vec[nonpos[0]]!r}, every class needs positive probability"
        )
        checks.append(Check(f"{name}_positive", ok, detail, float(vec.min())))
    a = params.alpha
    outside = np.argwhere(~((a >= 0) & (a <= 1)))
    ok = outside.size == 0
    if ok:
        detail = "alpha within [0, 1]"
    else:
        k, l = outside[0]
        detail = f"alpha outside [0, 1]: alpha[{k}, {l}] = {a[k, l]!r}"
    checks.append(Check("alpha_in_unit_interval", ok, detail))
    return Report(tuple(checks))


def _min_pairwise_gap(values):
    if values.size < 2:
        return math.inf
    return float(np.min(np.diff(np.sort(values))))


def compute_key_parameters(params):
    """Expected normalised degrees and their minimal separations."""
    tau = params.alpha @ params.rho
    xi = params.pi @ params.alpha
    tau.setflags(write=False)
    xi.setflags(write=False)
    return KeyParameters(
        tau=tau,
        xi=xi,
        delta_pi=_min_pairwise_gap(tau),
        delta_rho=_min_pairwise_gap(xi),
        pi_min=float(params.pi.min()),
        rho_min=float(params.rho.min()),
    )


def check_assumptions(key, n, d, s_g, s_m):
    """Report whether a model and a threshold pair satisfy the consistency conditions.

    Three conditions are checked: positive class proportions, distinct
    expected degrees, and thresholds strictly inside ``(0, delta_pi)`` /
    ``(0, delta_rho)``. The vanishing-threshold rates
    ``s_g * sqrt(d / log n)`` and ``s_m * sqrt(n / log d)`` are attached as
    informational values on the threshold checks.
    """
    checks = [
        Check("positive_proportions", key.pi_min > 0 and key.rho_min > 0,
              f"pi_min = {key.pi_min!r}, rho_min = {key.rho_min!r}", (key.pi_min, key.rho_min)),
        Check("distinct_degrees", key.delta_pi > 0 and key.delta_rho > 0,
              f"delta_pi = {key.delta_pi!r}, delta_rho = {key.delta_rho!r}", (key.delta_pi, key.delta_rho)),
    ]
    for axis, s, delta, own, other in (("row", s_g, key.delta_pi, n, d), ("column", s_m, key.delta_rho, d, n)):
        ok = 0 < s < delta
        rate = s * math.sqrt(other / math.log(own)) if own > 1 else math.inf
        checks.append(Check(
            f"{axis}_threshold_in_range", ok,
            f"{axis} threshold {s!r} {'inside' if ok else 'outside'} (0, {delta!r})",
            {"threshold": s, "upper": delta, "rate": rate},
        ))
    return Report(tuple(checks))


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _categorical(u, probs):
    # inverse CDF in index order; clip guards a cumulative sum that rounds below 1
    cdf = np.cumsum(probs)
    return np.minimum(np.searchsorted(cdf, u, side="right"), probs.size - 1)


def sample(params, n, d, seed):
    """Draw ``(z, w, x)`` from the model.

    Row labels, then column labels, then the matrix (row-major) are drawn
    from a single PCG64 stream seeded with ``seed``, so the output depends
    only on ``(params, n, d, seed)``.

    Returns
    -------
    z : LabelAssignment of length n
    w : LabelAssignment of length d
    x : ndarray of shape (n, d), dtype uint8
    """
    validate_parameters(params).raise_if_invalid()
    n = check_positive_int(n, "n")
    d = check_positive_int(d, "d")
    rng = make_rng(seed)
    z = _categorical(rng.random(n), params.pi)
    w = _categorical(rng.random(d), params.rho)
    x = np.empty((n, d), dtype=np.uint8)
    rows_per_chunk = max(1, _SAMPLE_CHUNK_ENTRIES // d)
    for start in range(0, n, rows_per_chunk):
        stop = min(n, start + rows_per_chunk)
        probs = params.alpha[np.ix_(z[start:stop], w)]
        np.less(rng.random((stop - start, d)), probs, out=x[start:stop], casting="unsafe")
    return LabelAssignment(z, params.g), LabelAssignment(w, params.m), x
