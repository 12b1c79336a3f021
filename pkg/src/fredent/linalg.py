"""Dense complex linear algebra used by every other module.

Operators are plain 2-D ``numpy`` arrays of ``complex128``.  Validated
positive operators are wrapped in the frozen dataclasses
:class:`TraceClassOperator` and :class:`DensityMatrix`, which carry the
spectrum (sorted non-increasing) and eigenbasis computed once at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (
    FunctionDomainError,
    NonFinite,
    NotHermitian,
    NotPSD,
    NotSquare,
    TraceNotOne,
)

HERMITIAN_RTOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
UNITARY_TOL = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array (scalars and vectors become 1xN)."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(1, -1)
    elif arr.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite("matrix has NaN or Inf entries")
    return arr


def _square(m) -> np.ndarray:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise NotSquare(f"matrix of shape {arr.shape} is not square")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def is_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    scale = np.max(np.abs(m)) if m.size else 0.0
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= rtol * scale)


def is_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    eye = np.eye(m.shape[0])
    return bool(np.linalg.norm(dagger(m) @ m - eye) <= tol)


def hermitian_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns
    -------
    spectrum : ndarray of float
        Eigenvalues sorted non-increasing.
    basis : ndarray of complex
        Unitary matrix whose columns are the matching eigenvectors.
    """
    arr = _square(m)
    if not is_hermitian(arr):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(0.5 * (arr + dagger(arr)))
    # eigh returns ascending order
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``m = U @ diag(s) @ V^dagger``.

    ``U`` and ``V`` have orthonormal columns; ``s`` is non-increasing.  Note
    that ``V`` is returned, not ``V^dagger``.
    """
    arr = as_matrix(m)
    u, s, vh = np.linalg.svd(arr, full_matrices=False)
    return u, s, dagger(vh)


def trace_norm(m) -> float:
    arr = _square(m)
    return math.fsum(np.linalg.svd(arr, compute_uv=False))


def operator_norm(m) -> float:
    arr = as_matrix(m)
    return float(np.linalg.svd(arr, compute_uv=False)[0])


def hs_norm(m) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(as_matrix(m)))


def _clamp(spectrum: np.ndarray) -> np.ndarray:
    out = spectrum.copy()
    out[(out < 0.0) & (out > -PSD_TOL)] = 0.0
    return out


@dataclass(frozen=True, eq=False)
class TraceClassOperator:
    """Hermitian positive semidefinite operator with cached spectral data."""

    matrix: np.ndarray
    spectrum: np.ndarray
    eigenbasis: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace_norm(self) -> float:
        return math.fsum(self.spectrum)

    @property
    def spectral_radius(self) -> float:
        return float(self.spectrum[0]) if self.spectrum.size else 0.0


@dataclass(frozen=True, eq=False)
class DensityMatrix(TraceClassOperator):
    """Trace-one :class:`TraceClassOperator`."""


def _spectral_data(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    arr = _square(m)
    spectrum, basis = hermitian_eig(arr)
    if spectrum.size and spectrum[-1] < -PSD_TOL:
        raise NotPSD(f"minimum eigenvalue {spectrum[-1]:.3e} is negative")
    arr = arr.copy()
    arr.setflags(write=False)
    spectrum = _clamp(spectrum)
    spectrum.setflags(write=False)
    basis.setflags(write=False)
    return arr, spectrum, basis


def make_trace_class(m) -> TraceClassOperator:
    return TraceClassOperator(*_spectral_data(m))


def make_density(m) -> DensityMatrix:
    """Validate ``m`` as a quantum state.

    Raises
    ------
    NotHermitian, NotPSD, TraceNotOne
    """
    arr, spectrum, basis = _spectral_data(m)
    tr = float(np.trace(arr).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr!r}, expected 1")
    return DensityMatrix(arr, spectrum, basis)


Operator = Union[TraceClassOperator, np.ndarray]


def as_trace_class(q) -> TraceClassOperator:
    if isinstance(q, TraceClassOperator):
        return q
    return make_trace_class(q)


def as_density(q) -> DensityMatrix:
    if isinstance(q, DensityMatrix):
        return q
    if isinstance(q, TraceClassOperator):
        return make_density(q.matrix)
    return make_density(q)


def from_spectral(spectrum, basis) -> np.ndarray:
    """Rebuild ``U diag(spectrum) U^dagger``."""
    basis = np.asarray(basis)
    return (basis * np.asarray(spectrum)) @ dagger(basis)


def matrix_function(q, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply the scalar function ``f`` to a PSD operator by spectral calculus.

    ``f`` receives the whole (non-negative) spectrum as an array and must
    return an array of the same length.
    """
    op = as_trace_class(q)
    try:
        with np.errstate(all="raise"):
            values = np.asarray(f(np.asarray(op.spectrum, dtype=float)))
    except (FloatingPointError, ValueError, ZeroDivisionError) as exc:
        raise FunctionDomainError(str(exc)) from exc
    if values.shape != op.spectrum.shape or not np.all(np.isfinite(values)):
        raise FunctionDomainError("function undefined on part of the spectrum")
    out = from_spectral(values, op.eigenbasis)
    if np.isrealobj(values):
        out = 0.5 * (out + dagger(out))
    return out


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=np.complex128).ravel()
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def diag_density(values) -> DensityMatrix:
    """Density matrix ``diag(values)`` in the computational basis."""
    return make_density(np.diag(np.asarray(values, dtype=float)))
