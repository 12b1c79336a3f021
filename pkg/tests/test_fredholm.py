import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fredent import errors
from fredent.fredholm import (
    Route,
    antisymmetrizer,
    det_direct,
    det_direct_sum,
    det_grothendieck,
    det_plemelj,
    det_product_identity_check,
    det_spectral,
    direct_sum_identity_check,
    fredholm_det,
    wedge_inner_product,
    wedge_trace,
    wedge_trace_oracle,
)
from fredent.sampling import random_density, random_psd, rng_from


def test_det_spectral_examples():
    assert det_spectral(np.diag([0.5, 0.5]), 1).value == pytest.approx(2.25)
    assert det_spectral(np.diag([1.0, 0, 0, 0]), 1).value == pytest.approx(2.0)
    assert det_spectral(np.diag([0.5, 0.3, 0.2]), 1).value == pytest.approx(2.34)


def test_det_grothendieck_examples(rng):
    assert det_grothendieck(np.diag([1.0, 2, 3]), 1, order=3).value == pytest.approx(24)
    assert det_grothendieck(np.zeros((3, 3)), 2.5 + 1j).value == 1
    q = random_density(rng, 5)
    assert det_grothendieck(q, 1).value == pytest.approx(det_spectral(q, 1).value, rel=1e-9)


def test_det_plemelj_examples():
    assert abs(det_plemelj(np.diag([0.5]), 1, order=60).value - 1.5) <= 1e-12
    assert abs(det_plemelj(np.diag([0.3, 0.2]), 1, order=60).value - 1.56) <= 1e-10
    with pytest.raises(errors.ConvergenceDomainError):
        det_plemelj(np.diag([1.0, 0.0]), 1)


def test_negative_order_rejected():
    with pytest.raises(errors.NegativeOrder):
        det_grothendieck(np.eye(2), 1, order=-1)


def test_direct_handles_non_hermitian():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert det_direct(a, 3).value == pytest.approx(1.0)


def test_dispatcher_routes_agree(rng):
    q = random_density(rng, 4)
    values = [fredholm_det(q, 0.7 - 0.2j, r).value for r in Route]
    assert np.allclose(values, values[0], rtol=1e-9)


def test_complex_z_matches_direct(rng):
    q = random_psd(rng, 5)
    z = 2.0 + 3.0j
    expected = np.linalg.det(np.eye(5) + z * q)
    assert det_spectral(q, z).value == pytest.approx(expected, rel=1e-10)
    assert det_grothendieck(q, z).value == pytest.approx(expected, rel=1e-9)


def test_envelope_bound_reported():
    res = det_spectral(np.diag([0.5, 0.5]), 2)
    assert res.bound == pytest.approx(math.exp(2.0))
    assert res.within_bound()


def test_wedge_trace_examples(rng):
    a = np.diag([1.0, 2.0, 3.0])
    assert wedge_trace(a, 2) == pytest.approx(11)
    assert wedge_trace_oracle(a, 2) == pytest.approx(11)
    assert wedge_trace(a, 0) == 1
    assert wedge_trace(a, 1) == pytest.approx(6)
    assert wedge_trace_oracle(np.diag([1.0, 2.0]), 2) == pytest.approx(2)
    assert wedge_trace_oracle(np.eye(3), 3) == pytest.approx(1)
    p = random_psd(rng, 3)
    assert abs(wedge_trace(p, 2) - wedge_trace_oracle(p, 2)) <= 1e-10


def test_wedge_trace_limits():
    with pytest.raises(errors.OrderOutOfRange):
        wedge_trace(np.eye(2), 3)
    with pytest.raises(errors.DimensionTooLarge):
        wedge_trace_oracle(np.eye(7), 2)


def test_antisymmetrizer_is_projector():
    p = antisymmetrizer(3, 2)
    assert np.allclose(p @ p, p)
    assert np.trace(p).real == pytest.approx(3)


def test_wedge_inner_product_examples(rng):
    e = [np.eye(3)[0], np.eye(3)[1]]
    assert wedge_inner_product(e, e) == pytest.approx(0.5)
    ff = [e[0], e[0]]
    assert abs(wedge_inner_product(ff, ff)) <= 1e-15
    # explicit antisymmetrized tensors
    f = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    g = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    p = antisymmetrizer(3, 2)
    tf = p @ np.kron(f[:, 0], f[:, 1])
    tg = p @ np.kron(g[:, 0], g[:, 1])
    assert wedge_inner_product(f.T, g.T) == pytest.approx(np.vdot(tf, tg), abs=1e-12)


def test_det_identities():
    assert det_direct_sum(np.diag([0.5]), np.diag([0.5])) == pytest.approx(2.25)
    assert det_direct_sum(np.diag([1.0, 0]), np.diag([0.0, 1])) == pytest.approx(4)
    rep = det_product_identity_check(np.zeros((2, 2)), np.zeros((2, 2)))
    assert rep.holds
    rep = det_product_identity_check(np.diag([1.0, 0]), np.diag([0.0, 1]))
    assert rep.holds


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), da=st.integers(1, 8), db=st.integers(1, 8))
def test_det_identities_random(seed, da, db):
    rng = rng_from(seed)
    a, b = random_psd(rng, da), random_psd(rng, db)
    assert direct_sum_identity_check(a, b).holds
    assert det_product_identity_check(a, random_psd(rng, da)).holds


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), dim=st.integers(1, 10))
def test_elementary_symmetric_bounded_for_states(seed, dim):
    q = random_density(rng_from(seed), dim)
    for n in range(dim + 1):
        assert wedge_trace(q, n) <= 1 / math.factorial(n) + 1e-12


def test_newton_matches_brute_force_minors(rng):
    a = random_psd(rng, 5)
    for n in range(6):
        minors = sum(np.linalg.det(a[np.ix_(s, s)]).real
                     for s in itertools.combinations(range(5), n)) if n else 1.0
        assert wedge_trace(a, n) == pytest.approx(minors, rel=1e-9, abs=1e-13)


def test_grothendieck_tiny_operator_large_z():
    a = 1e-8 * np.eye(3)
    assert det_grothendieck(a, 1e10).value == pytest.approx(101 ** 3, rel=1e-12)
