"""Fredholm determinants ``det(I + zA)`` computed along independent routes.

The spectral, Grothendieck and Plemelj routes accept only Hermitian PSD
operators, where the eigenvalue and singular-value products coincide.  The
direct route takes any square matrix.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import block_diag

from .errors import (
    ConvergenceDomainError,
    DimensionTooLarge,
    DimMismatch,
    LengthMismatch,
    NegativeOrder,
    OrderOutOfRange,
)
from .linalg import as_matrix, as_trace_class, trace_norm
from .reports import ClaimReport, encode_matrix

E_CUTOFF = 1e-14
PLEMELJ_DEFAULT_ORDER = 200
PLEMELJ_TERM_CUTOFF = 1e-15
ORACLE_MAX_DIM = 6
ORACLE_MAX_ORDER = 3


class Route(str, Enum):
    SPECTRAL = "spectral"
    GROTHENDIECK = "grothendieck"
    PLEMELJ = "plemelj"
    DIRECT = "direct"


@dataclass(frozen=True)
class DeterminantResult:
    value: complex
    route: Route
    truncation_order: int | None
    bound: float

    def within_bound(self, rtol: float = 1e-8) -> bool:
        return abs(self.value) <= self.bound * (1.0 + rtol)


def _envelope(z: complex, norm1: float) -> float:
    return math.exp(abs(z) * norm1)


def power_sums(a, count: int) -> list[float]:
    """``[Tr a, Tr a^2, ..., Tr a^count]`` by repeated multiplication."""
    m = as_matrix(a)
    out = []
    power = m
    for k in range(count):
        if k:
            power = power @ m
        out.append(float(np.trace(power).real))
    return out


def elementary_symmetric(sums: list[float], order: int) -> list[float]:
    """``e_0..e_order`` from power sums via Newton's identities.

    Values below ``E_CUTOFF * s^k / k!`` are flushed to zero to stop
    alternating-sign round-off from accumulating; ``s = max |p_i|^(1/i)``
    sets the scale, so tiny operators keep their coefficients.
    """
    scale = max((abs(p) ** (1.0 / i) for i, p in enumerate(sums[:order], start=1)),
                default=0.0)
    e = [1.0]
    for k in range(1, order + 1):
        terms = [(-1) ** (i - 1) * e[k - i] * sums[i - 1] for i in range(1, k + 1)]
        ek = math.fsum(terms) / k
        if abs(ek) < E_CUTOFF * scale ** k / math.factorial(k):
            ek = 0.0
        e.append(ek)
    return e


def det_spectral(a, z: complex = 1.0) -> DeterminantResult:
    op = as_trace_class(a)
    value = complex(np.prod(1.0 + z * op.spectrum.astype(np.complex128)))
    return DeterminantResult(value, Route.SPECTRAL, None, _envelope(z, op.trace_norm))


def det_grothendieck(a, z: complex = 1.0, order: int | None = None) -> DeterminantResult:
    """Sum ``z^n e_n(a)`` for ``n = 0..min(order, dim)``.

    The coefficients come from power sums of the matrix itself; no
    eigendecomposition enters the value (only the PSD validation).
    """
    op = as_trace_class(a)
    if order is None:
        order = op.dim
    if order < 0:
        raise NegativeOrder(f"order must be >= 0, got {order}")
    n = min(order, op.dim)
    e = elementary_symmetric(power_sums(op.matrix, n), n)
    re = math.fsum((z ** k * e[k]).real for k in range(n + 1))
    im = math.fsum((z ** k * e[k]).imag for k in range(n + 1))
    return DeterminantResult(complex(re, im), Route.GROTHENDIECK, n,
                             _envelope(z, trace_norm(op.matrix)))


def det_plemelj(a, z: complex = 1.0, order: int = PLEMELJ_DEFAULT_ORDER) -> DeterminantResult:
    """``exp(sum_n (-1)^(n+1) z^n Tr[a^n] / n)``, valid for ``|z| rho(a) < 1``."""
    op = as_trace_class(a)
    if abs(z) * op.spectral_radius >= 1.0:
        raise ConvergenceDomainError(
            f"|z| * rho(a) = {abs(z) * op.spectral_radius!r} >= 1; the log series diverges")
    if order < 0:
        raise NegativeOrder(f"order must be >= 0, got {order}")
    m = op.matrix
    power = None
    re_terms, im_terms = [], []
    used = 0
    for n in range(1, order + 1):
        power = m if power is None else power @ m
        term = complex((-1) ** (n + 1) * z ** n * np.trace(power).real / n)
        re_terms.append(term.real)
        im_terms.append(term.imag)
        used = n
        if abs(term) < PLEMELJ_TERM_CUTOFF:
            break
    log_det = complex(math.fsum(re_terms), math.fsum(im_terms))
    return DeterminantResult(cmath.exp(log_det), Route.PLEMELJ, used,
                             _envelope(z, op.trace_norm))


def det_direct(a, z: complex = 1.0) -> DeterminantResult:
    """LU determinant of ``I + zA`` for an arbitrary square matrix."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimMismatch(f"matrix of shape {m.shape} is not square")
    value = complex(np.linalg.det(np.eye(m.shape[0]) + z * m))
    return DeterminantResult(value, Route.DIRECT, None, _envelope(z, trace_norm(m)))


def fredholm_det(a, z: complex = 1.0, route: Route | str = Route.SPECTRAL,
                 order: int | None = None) -> DeterminantResult:
    route = Route(route)
    if route is Route.SPECTRAL:
        return det_spectral(a, z)
    if route is Route.GROTHENDIECK:
        return det_grothendieck(a, z, order)
    if route is Route.PLEMELJ:
        return det_plemelj(a, z, PLEMELJ_DEFAULT_ORDER if order is None else order)
    return det_direct(a, z)


def wedge_trace(a, n: int) -> float:
    """``Tr[wedge^n a]`` as the elementary symmetric polynomial ``e_n`` of the spectrum."""
    op = as_trace_class(a)
    if not 0 <= n <= op.dim:
        raise OrderOutOfRange(f"n={n} outside [0, {op.dim}]")
    return elementary_symmetric(power_sums(op.matrix, n), n)[n]


def _permutation_operator(dim: int, perm: tuple[int, ...]) -> np.ndarray:
    """Matrix permuting the tensor factors of ``(C^dim)^{otimes n}``."""
    n = len(perm)
    eye = np.eye(dim ** n).reshape([dim] * n + [dim ** n])
    return eye.transpose(list(perm) + [n]).reshape(dim ** n, dim ** n)


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def antisymmetrizer(dim: int, n: int) -> np.ndarray:
    """Orthogonal projector onto the antisymmetric subspace of ``(C^dim)^{otimes n}``."""
    size = dim ** n
    p = np.zeros((size, size))
    for perm in itertools.permutations(range(n)):
        p += _perm_sign(perm) * _permutation_operator(dim, perm)
    return p / math.factorial(n)


def wedge_trace_oracle(a, n: int) -> float:
    """Brute-force ``Tr[P a^{otimes n} P]`` with the explicit antisymmetric projector.

    With ``P`` the orthogonal projector (the ``1/n!``-normalised
    antisymmetrizer) the trace is already ``e_n`` of the spectrum: the range of
    ``P`` is spanned by the orthonormal vectors ``sqrt(n!) e_i1 ^ ... ^ e_in``.
    """
    op = as_trace_class(a)
    if op.dim > ORACLE_MAX_DIM or n > ORACLE_MAX_ORDER:
        raise DimensionTooLarge(
            f"oracle limited to dim <= {ORACLE_MAX_DIM}, n <= {ORACLE_MAX_ORDER}")
    if n < 0:
        raise OrderOutOfRange(f"n={n} is negative")
    if n == 0:
        return 1.0
    p = antisymmetrizer(op.dim, n)
    big = op.matrix
    for _ in range(n - 1):
        big = np.kron(big, op.matrix)
    return float(np.trace(p @ big @ p).real)


def wedge_inner_product(ff, gg) -> complex:
    """``<f_1 ^ ... ^ f_n | g_1 ^ ... ^ g_n> = det(R) / n!`` with ``R_ij = <f_i|g_j>``."""
    ff = [np.asarray(f, dtype=np.complex128).ravel() for f in ff]
    gg = [np.asarray(g, dtype=np.complex128).ravel() for g in gg]
    if len(ff) != len(gg):
        raise LengthMismatch(f"{len(ff)} vectors vs {len(gg)} vectors")
    if len({v.size for v in ff + gg}) > 1:
        raise LengthMismatch("vectors have different dimensions")
    n = len(ff)
    if n == 0:
        return 1.0 + 0j
    gram = np.array([[np.vdot(f, g) for g in gg] for f in ff])
    return complex(np.linalg.det(gram)) / math.factorial(n)


def det_direct_sum(a, b) -> float:
    """``det(I + A (+) B)`` on the block-diagonal operator."""
    a, b = as_trace_class(a), as_trace_class(b)
    return det_spectral(block_diag(a.matrix, b.matrix)).value.real


def det_product_identity_check(a, b, rtol: float = 1e-9) -> ClaimReport:
    """Check ``det(I+A) det(I+B) = det((I+A)(I+B))``."""
    a, b = as_trace_class(a), as_trace_class(b)
    if a.dim != b.dim:
        raise DimMismatch(f"dims {a.dim} and {b.dim} differ")
    eye = np.eye(a.dim)
    lhs = det_spectral(a).value.real * det_spectral(b).value.real
    rhs = np.linalg.det((eye + a.matrix) @ (eye + b.matrix)).real
    deviation = abs(lhs - rhs) / abs(rhs)
    report = ClaimReport("appA-product-identity")
    report.record(-deviation, deviation > rtol,
                  lambda: {"a": encode_matrix(a.matrix), "b": encode_matrix(b.matrix)})
    report.details = {"lhs": lhs, "rhs": float(rhs)}
    return report


def direct_sum_identity_check(a, b, rtol: float = 1e-9) -> ClaimReport:
    """Check ``det(I + A (+) B) = det(I+A) det(I+B)``."""
    a, b = as_trace_class(a), as_trace_class(b)
    lhs = det_direct_sum(a, b)
    rhs = det_spectral(a).value.real * det_spectral(b).value.real
    deviation = abs(lhs - rhs) / abs(rhs)
    report = ClaimReport("appA-direct-sum")
    report.record(-deviation, deviation > rtol,
                  lambda: {"a": encode_matrix(a.matrix), "b": encode_matrix(b.matrix)})
    report.details = {"lhs": lhs, "rhs": rhs}
    return report
