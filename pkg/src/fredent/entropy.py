"""Renormalized entropies FEN+/-, the operators S+/-, and the map Q -> log(I + Q).

FEN+(Q) = sum_k (1 + l_k) ln(1 + l_k) over the spectrum of Q, and
FEN- = -FEN+.  Natural logarithms throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimMismatch, KeepOutOfRange, SpectralRadiusOne
from .linalg import (
    as_density,
    as_trace_class,
    dagger,
    matrix_function,
    trace_norm,
)
from .reports import ClaimReport, encode_matrix

TAIL_CONSTANT = 2.0


class Sign(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class FenValue:
    plus: float
    tail_bound: float = 0.0

    @property
    def minus(self) -> float:
        return -self.plus


def fen_terms(spectrum) -> np.ndarray:
    lam = np.asarray(spectrum, dtype=float)
    return (1.0 + lam) * np.log1p(lam)


def fen_sum(spectrum) -> float:
    """``sum (1 + l) ln(1 + l)`` with exact (``fsum``) accumulation."""
    return math.fsum(fen_terms(spectrum))


def fen(q) -> FenValue:
    return FenValue(fen_sum(as_density(q).spectrum), 0.0)


def fen_trace_class(a) -> float:
    """FEN+ evaluated on an arbitrary PSD operator (e.g. a scaled block)."""
    return fen_sum(as_trace_class(a).spectrum)


def fen_uniform(n: int) -> float:
    """Closed form of FEN+ for the spectrum ``(1/n, ..., 1/n)``."""
    return (n + 1) * math.log1p(1.0 / n)


def fen_truncated(spectrum, keep: int) -> FenValue:
    """FEN+ over the leading ``keep`` eigenvalues with a certified tail bound.

    Every omitted eigenvalue contributes ``(1+l) ln(1+l) <= l^2 + l <= 2 l``,
    so the discarded mass ``1 - sum_{k<=keep} l_k`` bounds the error by a
    factor of two.
    """
    lam = np.asarray(spectrum, dtype=float)
    if not 0 <= keep <= lam.size:
        raise KeepOutOfRange(f"keep={keep} outside [0, {lam.size}]")
    head = lam[:keep]
    tail = 0.0 if keep == lam.size else max(0.0, TAIL_CONSTANT * (1.0 - math.fsum(head)))
    return FenValue(fen_sum(head), tail)


def f_plus(x):
    x = np.asarray(x, dtype=float)
    return np.expm1((1.0 + x) * np.log1p(x))


def f_minus(x):
    x = np.asarray(x, dtype=float)
    return np.expm1(-(1.0 + x) * np.log1p(x))


@dataclass(frozen=True, eq=False)
class EntropyOperator:
    matrix: np.ndarray
    sign: Sign

    @property
    def spectrum(self) -> np.ndarray:
        return np.sort(np.linalg.eigvalsh(self.matrix))[::-1]

    def log_det(self) -> float:
        """``ln det(I + S)``, which equals the signed FEN value."""
        return math.fsum(np.log1p(self.spectrum))


def entropy_operator(q, sign: Sign | str = Sign.PLUS) -> EntropyOperator:
    sign = Sign(sign)
    f = f_plus if sign is Sign.PLUS else f_minus
    return EntropyOperator(matrix_function(as_trace_class(q), f), sign)


def renorm_log(q) -> np.ndarray:
    """``log(I + Q)`` by spectral calculus."""
    return matrix_function(as_trace_class(q), np.log1p)


def frechet_derivative_log(q0, q1) -> np.ndarray:
    """Directional derivative of ``Q -> log(I + Q)`` at ``q0`` along ``q1``.

    Uses the divided-difference kernel in the eigenbasis of ``q0``; this
    equals the resolvent integral
    ``int_0^inf (I+q0+x)^-1 q1 (I+q0+x)^-1 dx``.
    """
    a = as_trace_class(q0)
    b = np.asarray(q1.matrix if hasattr(q1, "matrix") else q1, dtype=np.complex128)
    if b.shape != a.matrix.shape:
        raise DimMismatch(f"shapes {a.matrix.shape} and {b.shape} differ")
    lam = np.asarray(a.spectrum, dtype=float)
    u = a.eigenbasis
    li, lj = lam[:, None], lam[None, :]
    diff = li - lj
    log_diff = np.log1p(li) - np.log1p(lj)
    close = np.abs(diff) < 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = np.where(close, 1.0 / (1.0 + 0.5 * (li + lj)), log_diff / np.where(close, 1.0, diff))
    return u @ (kernel * (dagger(u) @ b @ u)) @ dagger(u)


def log_continuity_probe(q, q2) -> ClaimReport:
    """Compare ``||log(I+q) - log(I+q2)||_1`` with ``||q - q2||_1 / (1 - tau)``."""
    a, b = as_density(q), as_density(q2)
    tau = max(a.spectral_radius, b.spectral_radius)
    if tau >= 1.0 - 1e-12:
        raise SpectralRadiusOne(f"spectral radius {tau!r} too close to 1")
    lhs = trace_norm(renorm_log(a) - renorm_log(b))
    rhs = trace_norm(a.matrix - b.matrix) / (1.0 - tau)
    report = ClaimReport("log-continuity")
    report.record(rhs - lhs, rhs - lhs < -1e-12,
                  lambda: {"q": encode_matrix(a.matrix), "q2": encode_matrix(b.matrix)})
    report.details = {"lhs": lhs, "rhs": rhs}
    return report


def von_neumann_entropy(q) -> float:
    """Standard ``-Tr Q ln Q``; only for comparison with FEN."""
    lam = np.asarray(as_density(q).spectrum, dtype=float)
    lam = lam[lam > 0]
    return -math.fsum(lam * np.log(lam))
