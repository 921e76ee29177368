"""Monte Carlo study of Largest Gaps on the five-by-four benchmark designs.

A grid over (epsilon, n, d, threshold strategy) is simulated with a fixed
number of replicates per cell. Every replicate has its own seed derived by
hashing its grid coordinates, so records do not depend on execution order
or on the number of worker processes.
"""

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import asdict, dataclass, field, fields
import hashlib
import io
import math

import numpy as np

from .bounds import BoundInputs, theorem1_bound
from .evaluation import joint_success
from .gaps import ThresholdStrategy, largest_gaps_fit, threshold_value
from .model import LBMParameters, compute_key_parameters, sample

DESIGNS = ("balanced", "arithmetic")
BENCHMARK_EPSILONS = (0.05, 0.1, 0.15, 0.2, 0.25)
STRATEGY_ORDER = tuple(ThresholdStrategy)
G_STAR, M_STAR = 5, 4


def design_parameters(design, epsilon):
    """Benchmark model with 5 row classes and 4 column classes.

    Row ``k`` of ``alpha`` holds ``k`` entries equal to ``1 - epsilon``
    followed by ``4 - k`` entries equal to ``epsilon``. Proportions are
    uniform for ``"balanced"`` and ``(0.1, ..., 0.3)`` / ``(0.1, ..., 0.4)``
    for ``"arithmetic"``.
    """
    if design not in DESIGNS:
        raise ValueError(f"design must be one of {DESIGNS}, got {design!r}")
    if not 0 < epsilon < 0.5:
        raise ValueError(f"epsilon must lie in (0, 0.5), got {epsilon!r}")
    alpha = np.where(np.arange(G_STAR)[:, None] > np.arange(M_STAR)[None, :], 1 - epsilon, epsilon)
    if design == "balanced":
        pi = np.full(G_STAR, 0.2)
        rho = np.full(M_STAR, 0.25)
    else:
        pi = np.array([0.1, 0.15, 0.2, 0.25, 0.3])
        rho = np.array([0.1, 0.2, 0.3, 0.4])
    return LBMParameters(pi, rho, alpha)


@dataclass(frozen=True)
class ExperimentConfig:
    design: str = "balanced"
    epsilons: tuple = BENCHMARK_EPSILONS
    n_values: tuple = (100, 200, 400, 800, 1600)
    d_values: tuple = (100, 200, 400, 800, 1600)
    strategies: tuple = ("S1", "S2", "S3", "S4")
    replicates: int = 200
    master_seed: int = 0
    t: float = 0.1
    # wall-clock timings make the records CSV non-reproducible; off by default
    record_timing: bool = False

    def __post_init__(self):
        for name in ("epsilons", "n_values", "d_values", "strategies"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(
            self, "strategies", tuple(ThresholdStrategy.parse(s).value for s in self.strategies)
        )
        self.validate()

    def validate(self):
        if self.design not in DESIGNS:
            raise ValueError(f"design must be one of {DESIGNS}, got {self.design!r}")
        for eps in self.epsilons:
            if not 0 < eps < 0.5:
                raise ValueError(f"epsilon must lie in (0, 0.5), got {eps!r}")
        for name in ("n_values", "d_values"):
            for v in getattr(self, name):
                if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 2:
                    raise ValueError(f"{name} entries must be integers >= 2, got {v!r}")
        if isinstance(self.replicates, bool) or not isinstance(self.replicates, int) or self.replicates < 1:
            raise ValueError(f"replicates must be a positive integer, got {self.replicates!r}")
        if not (isinstance(self.t, (int, float)) and self.t > 0):
            raise ValueError(f"t must be positive, got {self.t!r}")

    def to_dict(self):
        return {f.name: list(v) if isinstance(v := getattr(self, f.name), tuple) else v for f in fields(self)}

    @classmethod
    def from_dict(cls, doc):
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**doc)

    def cells(self):
        for eps in self.epsilons:
            for n in self.n_values:
                for d in self.d_values:
                    for strategy in self.strategies:
                        yield eps, int(n), int(d), strategy


@dataclass(frozen=True)
class ReplicateRecord:
    design: str
    epsilon: float
    n: int
    d: int
    strategy: str
    replicate_index: int
    seed: int
    g_hat: int
    m_hat: int
    g_correct: bool
    m_correct: bool
    z_equivalent: bool
    w_equivalent: bool
    dinf: float
    compound_failure: bool
    fit_millis: float | None = None


RECORD_FIELDS = tuple(f.name for f in fields(ReplicateRecord))

SUMMARY_FIELDS = (
    "design", "epsilon", "n", "d", "strategy", "replicates",
    "g_correct", "m_correct", "z_equivalent", "w_equivalent", "compound_success",
    "mean_dinf_success",
)


def replicate_seed(master_seed, design, epsilon, n, d, strategy, replicate):
    strategy_index = STRATEGY_ORDER.index(ThresholdStrategy.parse(strategy))
    token = f"{master_seed}|{design}|{float(epsilon)!r}|{n}|{d}|{strategy_index}|{replicate}"
    digest = hashlib.blake2b(token.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little") >> 1


def cell_thresholds(strategy, n, d, key):
    strategy = ThresholdStrategy.parse(strategy)
    return (
        threshold_value(strategy, n, d, key=key, axis="row"),
        threshold_value(strategy, d, n, key=key, axis="column"),
    )


def run_replicate(params, key, design, epsilon, n, d, strategy, replicate, master_seed, t, record_timing=False):
    seed = replicate_seed(master_seed, design, epsilon, n, d, strategy, replicate)
    z, w, x = sample(params, n, d, seed)
    s_g, s_m = cell_thresholds(strategy, n, d, key)
    fit = largest_gaps_fit(x, s_g, s_m)
    event = joint_success(fit, z, w, params, t)
    return ReplicateRecord(
        design=design, epsilon=float(epsilon), n=n, d=d, strategy=strategy,
        replicate_index=replicate, seed=seed, g_hat=fit.g_hat, m_hat=fit.m_hat,
        g_correct=fit.g_hat == G_STAR, m_correct=fit.m_hat == M_STAR,
        z_equivalent=not event.z_not_equivalent, w_equivalent=not event.w_not_equivalent,
        dinf=event.dinf, compound_failure=event.failure,
        fit_millis=fit.fit_seconds * 1e3 if record_timing else None,
    )


def _run_cell(config, cell):
    eps, n, d, strategy = cell
    params = design_parameters(config.design, eps)
    key = compute_key_parameters(params)
    return [
        run_replicate(params, key, config.design, eps, n, d, strategy, r,
                      config.master_seed, config.t, config.record_timing)
        for r in range(config.replicates)
    ]


def run_grid(config, n_jobs=1):
    """Yield one :class:`ReplicateRecord` per (cell, replicate) in canonical order."""
    cells = list(config.cells())
    if n_jobs == 1 or len(cells) <= 1:
        for cell in cells:
            yield from _run_cell(config, cell)
        return
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        for records in pool.map(_run_cell, [config] * len(cells), cells):
            yield from records


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(rows, header):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[h]) for h in header])
    return buf.getvalue()


def records_to_csv(records):
    return _write_csv((asdict(r) for r in records), RECORD_FIELDS)


def _parse_bool(text):
    if text not in ("true", "false"):
        raise ValueError(f"expected true/false, got {text!r}")
    return text == "true"


_FIELD_PARSERS = {
    "design": str, "epsilon": float, "n": int, "d": int, "strategy": str,
    "replicate_index": int, "seed": int, "g_hat": int, "m_hat": int,
    "g_correct": _parse_bool, "m_correct": _parse_bool,
    "z_equivalent": _parse_bool, "w_equivalent": _parse_bool,
    "dinf": float, "compound_failure": _parse_bool,
    "fit_millis": lambda s: float(s) if s else None,
}


def records_from_csv(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        return []
    if tuple(header) != RECORD_FIELDS:
        raise ValueError(f"unexpected records header: {header}")
    return [
        ReplicateRecord(**{name: _FIELD_PARSERS[name](raw) for name, raw in zip(header, row)})
        for row in reader
    ]


def summarize(records):
    """Per-cell success proportions.

    ``mean_dinf_success`` averages ``dinf`` over replicates without compound
    failure and is ``nan`` when there are none.
    """
    groups = {}
    for r in records:
        groups.setdefault((r.design, r.epsilon, r.n, r.d, r.strategy), []).append(r)
    table = []
    for (design, eps, n, d, strategy), rs in groups.items():
        count = len(rs)
        ok = [r.dinf for r in rs if not r.compound_failure]
        table.append({
            "design": design, "epsilon": eps, "n": n, "d": d, "strategy": strategy,
            "replicates": count,
            "g_correct": sum(r.g_correct for r in rs) / count,
            "m_correct": sum(r.m_correct for r in rs) / count,
            "z_equivalent": sum(r.z_equivalent for r in rs) / count,
            "w_equivalent": sum(r.w_equivalent for r in rs) / count,
            "compound_success": len(ok) / count,
            "mean_dinf_success": math.fsum(ok) / len(ok) if ok else math.nan,
        })
    return table


def summary_to_csv(table):
    return _write_csv(table, SUMMARY_FIELDS)


@dataclass(frozen=True)
class LimitPoint:
    size: int
    s_g: float
    s_m: float
    bound: float | None = field(default=None)


def vanishing_threshold_bounds(params, sizes, strategy="S3", t=0.1):
    """Compound bound along ``n = d = size`` with shape-driven thresholds.

    Points where a threshold is not below the corresponding separation have
    ``bound=None``, since the bound is only defined there.
    """
    key = compute_key_parameters(params)
    points = []
    for size in sizes:
        s_g, s_m = cell_thresholds(strategy, size, size, key)
        try:
            inputs = BoundInputs(key, params.g, params.m, size, size, s_g, s_m, t)
        except ValueError:
            points.append(LimitPoint(size, s_g, s_m, None))
            continue
        points.append(LimitPoint(size, s_g, s_m, theorem1_bound(inputs)))
    return points
