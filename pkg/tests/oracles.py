"""Deliberately naive reference implementations used as test oracles.

Nothing here imports the package's algorithmic code.
"""

import itertools
import math


def brute_cluster_1d(values, threshold):
    """Sort with an index tie-break, scan adjacent pairs, assign segments."""
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    labels = [0] * len(values)
    current = 0
    for pos, idx in enumerate(order):
        if pos > 0:
            prev = values[order[pos - 1]]
            if values[idx] - prev > threshold:
                current += 1
        labels[idx] = current
    return current + 1, labels


def quad_loop_estimate(x, z, w, g, m):
    """(pi, rho, alpha) from four nested loops over (k, l, i, j)."""
    n, d = len(x), len(x[0])
    pi = [sum(1 for i in range(n) if z[i] == k) / n for k in range(g)]
    rho = [sum(1 for j in range(d) if w[j] == l) / d for l in range(m)]
    alpha = []
    for k in range(g):
        row = []
        for l in range(m):
            total = 0
            cells = 0
            for i in range(n):
                for j in range(d):
                    if z[i] == k and w[j] == l:
                        total += int(x[i][j])
                        cells += 1
            row.append(total / cells)
        alpha.append(row)
    return pi, rho, alpha


def naive_tau_xi(pi, rho, alpha):
    g, m = len(pi), len(rho)
    tau = [sum(alpha[k][l] * rho[l] for l in range(m)) for k in range(g)]
    xi = [sum(pi[k] * alpha[k][l] for k in range(g)) for l in range(m)]
    return tau, xi


def naive_min_gap(values):
    if len(values) < 2:
        return math.inf
    return min(abs(a - b) for a, b in itertools.combinations(values, 2))


def brute_equivalent(est, truth, count):
    """All bijections s with est[i] == s[truth[i]] for every i."""
    return [
        s for s in itertools.permutations(range(count))
        if all(e == s[t] for e, t in zip(est, truth))
    ]


def hand_prop1(n, d, delta, s, count, p_min):
    """``2 n exp(-(d/2) min(delta - s, s)^2) + count (1 - p_min)^n`` in plain floats."""
    margin = min(delta - s, s)
    return 2 * n * math.exp(-d / 2 * margin * margin) + count * (1 - p_min) ** n


def hand_theorem1(n, d, g, m, delta_pi, delta_rho, s_g, s_m, pi_min, rho_min, t):
    pr = pi_min * rho_min
    return (
        2 * hand_prop1(n, d, delta_pi, s_g, g, pi_min)
        + 2 * hand_prop1(d, n, delta_rho, s_m, m, rho_min)
        + 2 * g * m * (
            math.exp(-pr * n * d * t * t)
            + 2 * math.exp(-pr * pr * n / 8)
            + 2 * math.exp(-pr * pr * d / 8)
        )
        + 2 * g * math.exp(-2 * n * t * t)
        + 2 * m * math.exp(-2 * d * t * t)
    )


# bound inputs checked term by term against the hand formulas
PINNED = [
    dict(design="balanced", eps=0.05, n=2000, d=2000, s_g=0.1125, s_m=0.09, t=0.1),
    dict(design="balanced", eps=0.1, n=5000, d=3000, s_g=0.1, s_m=0.08, t=0.05),
    dict(design="balanced", eps=0.2, n=8000, d=12000, s_g=0.05, s_m=0.04, t=0.2),
    dict(design="arithmetic", eps=0.1, n=20000, d=20000, s_g=0.04, s_m=0.05, t=0.02),
    dict(design="arithmetic", eps=0.05, n=1500, d=40000, s_g=0.045, s_m=0.02, t=0.1),
]
