import itertools
import math

import numpy as np
import pytest

from largest_gaps.evaluation import align_labels, dinf_distance, joint_success
from largest_gaps.experiments import design_parameters
from largest_gaps.gaps import FitResult, largest_gaps_fit
from largest_gaps.model import LabelAssignment, LBMParameters, compute_key_parameters, sample
from oracles import brute_equivalent


def la(labels, count):
    return LabelAssignment(np.array(labels), count)


def test_identical_labelings():
    r = align_labels(la([0, 1, 2, 1], 3), la([0, 1, 2, 1], 3))
    assert r.equivalent and r.agreement == 1.0
    assert r.permutation.tolist() == [0, 1, 2]


def test_swapped_labelings():
    r = align_labels(la([0, 0, 1, 1], 2), la([1, 1, 0, 0], 2))
    assert r.equivalent and r.agreement == 1.0
    assert r.permutation.tolist() == [1, 0]


def test_different_counts_not_equivalent():
    r = align_labels(la([0, 0, 1, 1], 2), la([0, 1, 2, 2], 3))
    assert not r.equivalent and r.permutation is None


def test_length_mismatch():
    with pytest.raises(ValueError):
        align_labels(la([0, 1], 2), la([0, 1, 1], 2))


def test_partial_agreement():
    r = align_labels(la([0, 0, 1, 1, 1], 2), la([1, 1, 0, 0, 0], 2))
    assert r.equivalent
    r = align_labels(la([0, 0, 1, 1, 0], 2), la([1, 1, 0, 0, 0], 2))
    assert not r.equivalent and r.agreement == pytest.approx(0.8)
    assert r.permutation.tolist() == [1, 0]


def test_equivalence_and_uniqueness_against_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(300):
        c = int(rng.integers(1, 6))
        size = int(rng.integers(c, 25))
        truth = rng.permutation(np.concatenate([np.arange(c), rng.integers(0, c, size - c)]))
        if rng.random() < 0.5:
            est = rng.permutation(c)[truth]
        else:
            est = rng.permutation(np.concatenate([np.arange(c), rng.integers(0, c, size - c)]))
        r = align_labels(la(est, c), la(truth, c))
        perms = brute_equivalent(est.tolist(), truth.tolist(), c)
        assert r.equivalent == bool(perms)
        if r.equivalent:
            assert len(perms) == 1 and tuple(r.permutation.tolist()) == perms[0]
        best = max(np.mean([est[i] == s[truth[i]] for i in range(size)])
                   for s in itertools.permutations(range(c)))
        assert r.agreement == pytest.approx(best)


def test_agreement_invariant_under_common_permutation():
    rng = np.random.default_rng(8)
    for _ in range(100):
        est, truth = rng.integers(0, 4, 30), rng.integers(0, 4, 30)
        order = rng.permutation(30)
        a = align_labels(la(est, 4), la(truth, 4)).agreement
        b = align_labels(la(est[order], 4), la(truth[order], 4)).agreement
        assert a == b


def test_dinf_examples():
    theta = design_parameters("balanced", 0.1)
    assert dinf_distance(theta, theta) == 0
    three = LBMParameters([0.2, 0.3, 0.5], [1.0], [[0.1], [0.2], [0.3]])
    two = LBMParameters([0.5, 0.5], [1.0], [[0.1], [0.2]])
    assert dinf_distance(two, three) == math.inf
    a = LBMParameters([0.3, 0.7], [0.4, 0.6], [[0.1, 0.2], [0.3, 0.4]])
    b = LBMParameters([0.7, 0.3], [0.4, 0.6], [[0.3, 0.4], [0.1, 0.2]])
    assert dinf_distance(a, b, [1, 0], [0, 1]) == 0
    c = LBMParameters([0.25, 0.7], [0.4, 0.6], [[0.1, 0.2], [0.3, 0.4]])
    assert dinf_distance(a, c) == pytest.approx(0.05, abs=1e-15)


def test_dinf_zero_against_own_relabelling():
    rng = np.random.default_rng(9)
    for _ in range(50):
        g, m = rng.integers(1, 6, size=2)
        theta = LBMParameters(rng.dirichlet(np.ones(g)), rng.dirichlet(np.ones(m)), rng.random((g, m)))
        s, t = rng.permutation(g), rng.permutation(m)
        moved = theta.permuted(s, t)
        assert dinf_distance(theta, moved, s, t) == 0
        assert dinf_distance(moved, theta, np.argsort(s), np.argsort(t)) == 0


def test_dinf_malformed_permutation():
    theta = design_parameters("balanced", 0.1)
    with pytest.raises(ValueError, match="bijection"):
        dinf_distance(theta, theta, [0, 0, 1, 2, 3], None)


def _perfect_fit(params, z, w):
    return FitResult(params.g, params.m, z, w, params, 0.1, 0.1, np.array([]), np.array([]))


def test_joint_success_perfect_fit():
    params = design_parameters("balanced", 0.1)
    z, w, _ = sample(params, 100, 80, 1)
    event = joint_success(_perfect_fit(params, z, w), z, w, params, 0.1)
    assert not any([event.g_wrong, event.m_wrong, event.z_not_equivalent,
                    event.w_not_equivalent, event.dinf_exceeds, event.failure])
    assert event.dinf == 0


def test_joint_success_wrong_count():
    params = design_parameters("balanced", 0.1)
    z, w, _ = sample(params, 100, 80, 1)
    merged = LabelAssignment(np.minimum(z.labels, 3), 4)
    fit = FitResult(4, 4, merged, w, LBMParameters(np.full(4, 0.25), params.rho, params.alpha[:4]),
                    0.1, 0.1, np.array([]), np.array([]))
    event = joint_success(fit, z, w, params, 0.1)
    assert event.g_wrong and event.failure and event.dinf == math.inf


def test_joint_success_on_seeded_instance():
    params = design_parameters("balanced", 0.05)
    key = compute_key_parameters(params)
    z, w, x = sample(params, 2000, 2000, 2024)
    fit = largest_gaps_fit(x, key.delta_pi / 2, key.delta_rho / 2)
    event = joint_success(fit, z, w, params, 0.1)
    assert not event.failure
    assert event.dinf < 0.1
