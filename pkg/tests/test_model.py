import json

import numpy as np
import pytest

from pareto_tas import (
    BanditInstance,
    dominates,
    pareto_set,
    rescale_to_unit_variance,
    transport_cost,
)
from pareto_tas.data import covid_instance


def test_dominates_componentwise():
    assert dominates((1, 2), (2, 3))
    assert not dominates((1, 2), (2, 1))
    assert dominates((1, 1), (1, 1))


def test_dominates_length_mismatch():
    with pytest.raises(ValueError):
        dominates((1, 2), (1, 2, 3))


def test_dominates_antisymmetry_random():
    rng = np.random.default_rng(0)
    for _ in range(200):
        a = rng.integers(0, 3, size=3)
        b = rng.integers(0, 3, size=3)
        both = dominates(a, b) and dominates(b, a)
        assert both == bool(np.all(a == b))


def test_pareto_simple():
    assert pareto_set([[1, 2], [2, 1], [0, 0]]) == (0, 1)
    assert pareto_set([[5, 5]]) == (0,)


def test_pareto_covid_is_the_two_m1273_arms():
    inst = covid_instance()
    par = pareto_set(inst.means)
    assert tuple(inst.labels[k] for k in par) == ("BNT/m1273", "ChAd/m1273")


def test_pareto_tie_convention_keeps_duplicates():
    means = [[1, 1], [1, 1], [0, 0]]
    assert pareto_set(means) == (0, 1)


def test_pareto_translation_and_permutation_invariance():
    rng = np.random.default_rng(1)
    means = rng.uniform(0, 10, size=(6, 3))
    par = pareto_set(means)
    assert pareto_set(means + 3.7) == par
    perm = rng.permutation(6)
    par_perm = pareto_set(means[perm])
    assert sorted(perm[list(par_perm)]) == sorted(par)
    cols = rng.permutation(3)
    assert pareto_set(means[:, cols]) == par


def test_every_outsider_has_a_strict_dominator_inside():
    rng = np.random.default_rng(2)
    for _ in range(50):
        means = rng.uniform(0, 10, size=(8, 3))
        par = set(pareto_set(means))
        for k in range(8):
            if k in par:
                continue
            assert any(
                np.all(means[k] <= means[k1]) and np.any(means[k] != means[k1])
                for k1 in par
            )


def test_rescale_identity_and_roundtrip():
    inst = BanditInstance(np.array([[6.0]]), np.array([4.0]))
    scaled, inverse = rescale_to_unit_variance(inst)
    assert scaled[0, 0] == pytest.approx(3.0)
    assert inverse(scaled) == pytest.approx(inst.means)

    covid = covid_instance()
    scaled, inverse = rescale_to_unit_variance(covid)
    np.testing.assert_allclose(inverse(scaled), covid.means, atol=1e-12)

    ones = BanditInstance(covid.means, np.ones(3))
    scaled, _ = rescale_to_unit_variance(ones)
    np.testing.assert_array_equal(scaled, covid.means)


def test_rescale_rejects_bad_variance():
    with pytest.raises(ValueError):
        BanditInstance(np.zeros((1, 1)), np.array([0.0]))


def test_transport_cost_values():
    assert transport_cost([[0.0]], [[3.0]], [2.0]) == pytest.approx(9.0)
    mu = np.array([[1.0, 2.0], [3.0, 4.0]])
    lam = mu.copy()
    lam[1] += 5.0
    assert transport_cost(mu, mu, [1.0, 1.0]) == 0.0
    assert transport_cost(mu, lam, [1.0, 0.0]) == 0.0


def test_transport_cost_linear_in_w():
    rng = np.random.default_rng(3)
    mu = rng.normal(size=(4, 2))
    lam = rng.normal(size=(4, 2))
    w = rng.uniform(size=4)
    base = transport_cost(mu, lam, w)
    for c in (0.0, 0.5, 2.0, 10.0):
        assert transport_cost(mu, lam, c * w) == pytest.approx(c * base)


def test_json_roundtrip():
    inst = covid_instance()
    again = BanditInstance.from_json(inst.to_json())
    np.testing.assert_array_equal(again.means, inst.means)
    np.testing.assert_array_equal(again.variances, inst.variances)
    assert again.labels == inst.labels
    payload = json.loads(inst.to_json())
    assert set(payload) == {"means", "variances", "labels"}
