import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fredent import errors
from fredent.linalg import (
    diag_density,
    hermitian_eig,
    make_density,
    make_trace_class,
    matrix_function,
    operator_norm,
    svd,
    trace_norm,
)
from fredent.sampling import random_density, random_hermitian, random_unitary, rng_from


def test_eig_diagonal_sorted():
    w, v = hermitian_eig(np.diag([0.3, 0.7]))
    assert np.allclose(w, [0.7, 0.3])
    assert np.allclose(np.abs(v), [[0, 1], [1, 0]])


def test_eig_rank_one_projector():
    w, _ = hermitian_eig([[0.5, 0.5], [0.5, 0.5]])
    assert np.allclose(w, [1.0, 0.0], atol=1e-15)


def test_eig_reconstruction(rng):
    m = random_hermitian(rng, 5)
    w, u = hermitian_eig(m)
    assert np.linalg.norm(u @ np.diag(w) @ u.conj().T - m) <= 1e-9


def test_eig_rejects_non_hermitian():
    with pytest.raises(errors.NotHermitian):
        hermitian_eig([[0, 1], [0, 0]])


def test_eig_rejects_non_square():
    with pytest.raises(errors.NotSquare):
        hermitian_eig(np.zeros((2, 3)))


def test_eig_rejects_nan():
    with pytest.raises(errors.NonFinite):
        hermitian_eig([[np.nan, 0], [0, 1]])


def test_svd_examples(rng):
    assert np.allclose(svd(np.eye(3))[1], [1, 1, 1])
    assert np.allclose(svd(np.diag([2.0, -1.0]))[1], [2, 1])
    m = rng.normal(size=(4, 3))
    u, s, v = svd(m)
    assert np.linalg.norm(u @ np.diag(s) @ v.conj().T - m) <= 1e-9


def test_density_validation():
    q = make_density(np.diag([0.5, 0.5]))
    assert np.allclose(q.spectrum, [0.5, 0.5])
    with pytest.raises(errors.TraceNotOne):
        make_density(np.diag([1.0, 0.1]))
    with pytest.raises(errors.NotPSD):
        make_density([[0.6, 0.5], [0.5, 0.4]])


def test_tiny_negative_eigenvalue_clamped():
    q = make_density(np.diag([1.0 + 5e-11, -5e-11]))
    assert q.spectrum.min() >= 0.0


def test_matrix_function_examples():
    q = np.diag([0.5, 0.5])
    assert np.allclose(matrix_function(q, lambda x: x), q)
    assert np.allclose(matrix_function(np.diag([0.6, 0.4]), lambda x: x ** 2), np.diag([0.36, 0.16]))
    fp = matrix_function(np.diag([1.0, 0.0]), lambda x: (1 + x) ** (1 + x) - 1)
    assert np.allclose(fp, np.diag([3.0, 0.0]))


def test_matrix_function_domain_error():
    with pytest.raises(errors.FunctionDomainError):
        matrix_function(np.diag([0.5, 0.5]), lambda x: np.log(x - 1))


def test_norms(rng):
    assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2.0)
    assert trace_norm(random_density(rng, 4)) == pytest.approx(1.0)
    m = rng.normal(size=(3, 3))
    assert trace_norm(m) == pytest.approx(np.linalg.svd(m, compute_uv=False).sum())
    assert operator_norm(np.diag([0.2, 0.9])) == pytest.approx(0.9)
    assert operator_norm(random_unitary(rng, 3)) == pytest.approx(1.0)
    assert operator_norm(m) == pytest.approx(np.linalg.norm(m, 2))


def test_trace_class_properties():
    a = make_trace_class(np.diag([0.2, 0.9, 0.0]))
    assert a.dim == 3
    assert a.trace_norm == pytest.approx(1.1)
    assert a.spectral_radius == pytest.approx(0.9)
    assert diag_density([0.25, 0.75]).spectrum[0] == pytest.approx(0.75)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), dim=st.integers(1, 8))
def test_density_invariants(seed, dim):
    q = make_density(random_density(rng_from(seed), dim))
    assert np.all(np.diff(q.spectrum) <= 0)
    assert q.spectrum.min() >= 0
    assert abs(q.spectrum.sum() - 1) <= 1e-10
