"""Additive and multiplicative majorization, Gram numbers, and conversion channels.

``a`` is majorized by ``b`` when every prefix sum of the non-increasingly
sorted ``a`` is at most the matching prefix sum of ``b``; multiplicative
majorization compares prefix products of ``1 + value`` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DimMismatch, NotMajorized, SumMismatch
from .linalg import as_density
from .reports import ClaimReport
from .sampling import rng_from

PREFIX_TOL = 1e-12
SUM_TOL = 1e-10


class Relation(str, Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class MajorizationVerdict:
    relation: Relation
    holds: bool
    first_violation_index: int | None
    margins: np.ndarray = field(repr=False)


def ordered(values) -> np.ndarray:
    """Sort non-increasing; ties keep their original order."""
    v = np.asarray(values, dtype=float).ravel()
    return v[np.argsort(-v, kind="stable")]


def _pad(a: np.ndarray, b: np.ndarray, fill_a: float = 0.0,
         fill_b: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    n = max(a.size, b.size)
    return (np.concatenate([a, np.full(n - a.size, fill_a)]),
            np.concatenate([b, np.full(n - b.size, fill_b)]))


def _verdict(relation: Relation, margins: np.ndarray) -> MajorizationVerdict:
    bad = np.flatnonzero(margins < -PREFIX_TOL)
    first = int(bad[0]) + 1 if bad.size else None
    return MajorizationVerdict(relation, first is None, first, margins)


def additive_majorizes(a, b) -> MajorizationVerdict:
    """Is ``a`` majorized by ``b``?  Indices in the verdict are 1-based prefix lengths."""
    a, b = _pad(ordered(a), ordered(b))
    return _verdict(Relation.ADDITIVE, np.cumsum(b) - np.cumsum(a))


def multiplicative_majorizes(a, b) -> MajorizationVerdict:
    """Is ``prod_{i<=n} (1 + a_i) <= prod_{i<=n} (1 + b_i)`` for every ``n``?

    Compared in the log domain; the margins are exactly those of
    ``additive_majorizes(log1p(a), log1p(b))``.
    """
    a, b = _pad(ordered(a), ordered(b))
    margins = np.cumsum(np.log1p(b)) - np.cumsum(np.log1p(a))
    return _verdict(Relation.MULTIPLICATIVE, margins)


def _sample_pair(rng: np.random.Generator, dim: int) -> tuple[np.ndarray, np.ndarray]:
    b = ordered(rng.random(dim) * rng.choice([0.2, 1.0, 3.0]))
    kind = rng.integers(3)
    if kind == 0:
        a = ordered(rng.random(dim) * b.max())
    else:
        # shrink and mix b so the multiplicative hypothesis holds often
        d = np.eye(dim)
        i, j = rng.choice(dim, size=2, replace=dim < 2)
        t = rng.random()
        d[[i, j]] = d[[i, j]] * t + d[[j, i]] * (1 - t)
        a = ordered(d @ b * rng.uniform(0.5, 1.0))
    return a, b


def m_implies_additive_probe(trials: int = 10_000, dim: int = 8, seed=0) -> ClaimReport:
    """Sample pairs; whenever ``a`` m-majorized by ``b`` holds, require additive too."""
    rng = rng_from(seed)
    report = ClaimReport("m-implies-additive")
    hypothesis_count = 0
    for _ in range(trials):
        n = int(rng.integers(1, dim + 1))
        a, b = _sample_pair(rng, n)
        if not multiplicative_majorizes(a, b).holds:
            report.trials += 1
            continue
        hypothesis_count += 1
        verdict = additive_majorizes(a, b)
        report.record(float(verdict.margins.min()), not verdict.holds,
                      lambda: {"a": a.tolist(), "b": b.tolist()})
    report.details = {"hypothesis_incidence": hypothesis_count}
    return report


def gram_numbers(q) -> np.ndarray:
    """``g_n = prod_{i<=n} (1 + l_i)`` for ``n = 1..dim``."""
    return np.cumprod(1.0 + as_density(q).spectrum)


def state_m_majorizes(q1, q2) -> MajorizationVerdict:
    """Does ``q2`` m-majorize ``q1`` (``g_n(q1) <= g_n(q2)`` for all ``n``)?"""
    g1, g2 = gram_numbers(q1), gram_numbers(q2)
    g1, g2 = _pad(g1, g2, g1[-1], g2[-1])
    return _verdict(Relation.MULTIPLICATIVE, g2 - g1)


def fen_interpolation(q1, q2, t: float) -> float:
    """``F(t) = sum (1+x)ln(1+x)`` along ``x = t*lam + (1-t)*mu`` (co-sorted spectra)."""
    lam, mu = _co_sorted(q1, q2)
    x = t * lam + (1.0 - t) * mu
    return math.fsum((1.0 + x) * np.log1p(x))


def fen_interpolation_second_derivative(q1, q2, t: float) -> float:
    lam, mu = _co_sorted(q1, q2)
    return math.fsum((lam - mu) ** 2 / (1.0 + t * lam + (1.0 - t) * mu))


def _co_sorted(q1, q2) -> tuple[np.ndarray, np.ndarray]:
    lam = _spectrum_of(q1)
    mu = _spectrum_of(q2)
    if lam.size != mu.size:
        raise DimMismatch(f"spectra of length {lam.size} and {mu.size}")
    return ordered(lam), ordered(mu)


def _spectrum_of(q) -> np.ndarray:
    if hasattr(q, "spectrum"):
        return np.asarray(q.spectrum, dtype=float)
    arr = np.asarray(q)
    if arr.ndim == 1:
        return arr.astype(float)
    return np.asarray(as_density(arr).spectrum, dtype=float)


def t_transforms(a, b) -> list[tuple[int, int, float]]:
    """T-transforms carrying ``b`` to ``a``.

    Each entry ``(j, k, t)`` is the matrix ``t*I + (1-t)*P_jk`` and they apply
    in list order.  Needs ``a`` majorized by ``b`` with equal sums.
    """
    a, b = ordered(a), ordered(b)
    if a.size != b.size:
        raise DimMismatch(f"lengths {a.size} and {b.size} differ")
    if abs(a.sum() - b.sum()) > SUM_TOL:
        raise SumMismatch(f"sums {a.sum()!r} and {b.sum()!r} differ")
    if not additive_majorizes(a, b).holds:
        raise NotMajorized("target is not majorized by the source")
    x = b.copy()
    steps = []
    eps = 1e-14
    for _ in range(a.size):
        above = np.flatnonzero(x - a > eps)
        if not above.size:
            break
        j = int(above[-1])
        below = np.flatnonzero(a[j + 1:] - x[j + 1:] > eps)
        if not below.size:
            break
        k = j + 1 + int(below[0])
        delta = min(x[j] - a[j], a[k] - x[k])
        t = 1.0 - delta / (x[j] - x[k])
        xj, xk = x[j], x[k]
        x[j] = t * xj + (1 - t) * xk
        x[k] = t * xk + (1 - t) * xj
        steps.append((j, k, t))
    return steps


def conversion_matrix(a, b) -> np.ndarray:
    """Doubly stochastic ``D`` with ``a = D @ b`` (both sorted non-increasing)."""
    n = np.asarray(a).size
    d = np.eye(n)
    for j, k, t in t_transforms(a, b):
        step = np.eye(n)
        step[j, j] = step[k, k] = t
        step[j, k] = step[k, j] = 1 - t
        d = step @ d
    return d


def birkhoff_decomposition(d, eps: float = 1e-13) -> list[tuple[float, np.ndarray]]:
    """Write a doubly stochastic matrix as a convex sum of permutation matrices."""
    rest = np.array(d, dtype=float)
    n = rest.shape[0]
    terms = []
    for _ in range((n - 1) ** 2 + 1):
        if rest.max() <= eps:
            break
        cost = np.where(rest > eps, -rest, 1e6)
        rows, cols = linear_sum_assignment(cost)
        if np.any(rest[rows, cols] <= eps):
            break
        w = float(rest[rows, cols].min())
        perm = np.zeros((n, n), dtype=int)
        perm[rows, cols] = 1
        terms.append((w, perm))
        rest[rows, cols] -= w
    total = math.fsum(w for w, _ in terms)
    return [(w / total, p) for w, p in terms]


def construct_conversion_channel(a, b) -> list[tuple[float, np.ndarray]]:
    """Weights and permutation matrices of a mixed-permutation map sending ``b`` to ``a``.

    In the eigenbasis of a state with spectrum ``b`` the permutations act as
    unitaries; the resulting mixed-unitary channel outputs spectrum ``a``.
    """
    return birkhoff_decomposition(conversion_matrix(a, b))


def conversion_channel_for_state(q, target):
    """Mixed-unitary :class:`~fredent.channels.KrausChannel` taking ``q`` to spectrum ``target``."""
    from .channels import mixed_unitary

    q = as_density(q)
    terms = construct_conversion_channel(target, q.spectrum)
    u = np.asarray(q.eigenbasis)
    unitaries = [u @ p @ u.conj().T for _, p in terms]
    return mixed_unitary([w for w, _ in terms], unitaries)
