"""Non-asymptotic failure-probability bounds for Largest Gaps.

Each term is evaluated as a logarithm so that sizes in the 1e5 range,
whose exponents fall far below the float range, stay exact; the terms are
combined with log-sum-exp. Totals are reported raw and clipped to [0, 1].
"""

from dataclasses import dataclass
import math

from scipy.special import logsumexp

from ._validation import check_positive_int, check_threshold


@dataclass(frozen=True)
class BoundInputs:
    key: object
    g_star: int
    m_star: int
    n: int
    d: int
    s_g: float
    s_m: float
    t: float = 0.1

    def __post_init__(self):
        check_positive_int(self.n, "n")
        check_positive_int(self.d, "d")
        check_positive_int(self.g_star, "g_star")
        check_positive_int(self.m_star, "m_star")
        check_threshold(self.t, "t")
        if not 0 < self.s_g < self.key.delta_pi:
            raise ValueError(f"row threshold {self.s_g!r} must lie in (0, delta_pi = {self.key.delta_pi!r})")
        if not 0 < self.s_m < self.key.delta_rho:
            raise ValueError(f"column threshold {self.s_m!r} must lie in (0, delta_rho = {self.key.delta_rho!r})")

    def swapped(self):
        """Inputs with rows and columns exchanged."""
        k = self.key
        key = type(k)(tau=k.xi, xi=k.tau, delta_pi=k.delta_rho, delta_rho=k.delta_pi,
                      pi_min=k.rho_min, rho_min=k.pi_min)
        return BoundInputs(key, self.m_star, self.g_star, self.d, self.n, self.s_m, self.s_g, self.t)


@dataclass(frozen=True)
class BoundTerm:
    name: str
    log_value: float

    @property
    def value(self):
        return math.exp(self.log_value)


@dataclass(frozen=True)
class BoundBreakdown:
    terms: tuple

    @property
    def log_raw(self):
        return float(logsumexp([t.log_value for t in self.terms]))

    @property
    def raw(self):
        return math.exp(self.log_raw)

    @property
    def clipped(self):
        return min(1.0, self.raw)


def _log_power_miss(count, p_min, size):
    # log(count * (1 - p_min) ** size); -inf when p_min == 1
    if p_min >= 1:
        return -math.inf
    return math.log(count) + size * math.log1p(-p_min)


def _classification_terms(inputs, factor):
    k = inputs.key
    row_margin = min(k.delta_pi - inputs.s_g, inputs.s_g)
    col_margin = min(k.delta_rho - inputs.s_m, inputs.s_m)
    return (
        BoundTerm("row_degree_deviation", math.log(2 * factor * inputs.n) - inputs.d / 2 * row_margin ** 2),
        BoundTerm("row_empty_class", math.log(factor) + _log_power_miss(inputs.g_star, k.pi_min, inputs.n)),
        BoundTerm("column_degree_deviation", math.log(2 * factor * inputs.d) - inputs.n / 2 * col_margin ** 2),
        BoundTerm("column_empty_class", math.log(factor) + _log_power_miss(inputs.m_star, k.rho_min, inputs.d)),
    )


def prop1_row_terms(inputs):
    return BoundBreakdown(_classification_terms(inputs, 1)[:2])


def prop1_col_terms(inputs):
    return BoundBreakdown(_classification_terms(inputs, 1)[2:])


def prop1_row_bound(inputs):
    """Bound on ``P(g_hat != g or z_hat not equivalent to z)``.

    ``2n exp(-(d/2) min(delta_pi - s_g, s_g)^2) + g (1 - pi_min)^n``, clipped at 1.
    """
    return prop1_row_terms(inputs).clipped


def prop1_col_bound(inputs):
    """Column counterpart of :func:`prop1_row_bound`."""
    return prop1_col_terms(inputs).clipped


def estimation_terms(inputs):
    """Terms bounding the parameter error once both labellings are right."""
    k = inputs.key
    n, d, t = inputs.n, inputs.d, inputs.t
    gm = inputs.g_star * inputs.m_star
    pr = k.pi_min * k.rho_min
    return (
        BoundTerm("alpha_deviation", math.log(2 * gm) - pr * n * d * t ** 2),
        BoundTerm("row_block_size", math.log(4 * gm) - pr ** 2 * n / 8),
        BoundTerm("column_block_size", math.log(4 * gm) - pr ** 2 * d / 8),
        BoundTerm("pi_deviation", math.log(2 * inputs.g_star) - 2 * n * t ** 2),
        BoundTerm("rho_deviation", math.log(2 * inputs.m_star) - 2 * d * t ** 2),
    )


def theorem1_terms(inputs):
    return BoundBreakdown(_classification_terms(inputs, 2) + estimation_terms(inputs))


def theorem1_bound(inputs):
    """Bound on the probability that any of ``g``, ``m``, ``z``, ``w`` is wrong or ``d_inf > t``."""
    return theorem1_terms(inputs).clipped
