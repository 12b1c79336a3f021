"""Kraus-form quantum operations, partial traces, and monotonicity claim checkers.

Two completeness conditions are tracked side by side: the usual
trace-non-increasing ``sum A_i^dag A_i <= I`` and the row condition
``sum A_i A_i^dag <= I`` under which the determinant-contraction claim is
stated.  Each checker names the one it gates on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .entropy import fen
from .errors import (
    DimFactorizationMismatch,
    DimMismatch,
    KrausConditionUnmet,
    NotUnitary,
    WeightsInvalid,
)
from .fredholm import det_spectral
from .linalg import (
    DensityMatrix,
    TraceClassOperator,
    as_density,
    as_matrix,
    dagger,
    is_unitary,
    make_density,
    make_trace_class,
)
from .reports import ClaimReport, decode_matrix, encode_matrix

COMPLETENESS_TOL = 1e-10
MARGIN_TOL = 1e-10


class Completeness(str, Enum):
    TRACE_PRESERVING = "trace_preserving"
    TRACE_NON_INCREASING = "trace_non_increasing"
    NONE = "none"


def _leq_identity(m: np.ndarray, tol: float = COMPLETENESS_TOL) -> bool:
    gap = np.eye(m.shape[0]) - 0.5 * (m + dagger(m))
    return bool(np.linalg.eigvalsh(gap)[0] >= -tol)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """``Q -> sum_i A_i Q A_i^dag`` with each ``A_i`` of shape ``(dim_out, dim_in)``."""

    kraus_ops: tuple[np.ndarray, ...]
    completeness: Completeness
    unital: bool
    row_contractive: bool

    @classmethod
    def from_ops(cls, ops: Sequence) -> "KrausChannel":
        mats = tuple(as_matrix(a) for a in ops)
        if not mats:
            raise DimMismatch("at least one Kraus operator is required")
        shape = mats[0].shape
        if any(a.shape != shape for a in mats):
            raise DimMismatch("Kraus operators have different shapes")
        dim_out, dim_in = shape
        col_sum = sum(dagger(a) @ a for a in mats)
        row_sum = sum(a @ dagger(a) for a in mats)
        if np.linalg.norm(col_sum - np.eye(dim_in)) <= COMPLETENESS_TOL:
            completeness = Completeness.TRACE_PRESERVING
        elif _leq_identity(col_sum):
            completeness = Completeness.TRACE_NON_INCREASING
        else:
            completeness = Completeness.NONE
        unital = bool(np.linalg.norm(row_sum - np.eye(dim_out)) <= COMPLETENESS_TOL)
        for a in mats:
            a.setflags(write=False)
        return cls(mats, completeness, unital, _leq_identity(row_sum))

    @property
    def dim_in(self) -> int:
        return self.kraus_ops[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.kraus_ops[0].shape[0]

    @property
    def trace_preserving(self) -> bool:
        return self.completeness is Completeness.TRACE_PRESERVING

    @property
    def bistochastic(self) -> bool:
        return self.trace_preserving and self.unital

    def __call__(self, q):
        return apply_channel(self, q)

    def tensor(self, other: "KrausChannel") -> "KrausChannel":
        """Kraus set of ``self (x) other``: every pairwise Kronecker product."""
        return KrausChannel.from_ops(
            [np.kron(a, b) for a in self.kraus_ops for b in other.kraus_ops])

    def to_dict(self) -> dict:
        return {"kraus": [encode_matrix(a) for a in self.kraus_ops]}

    @classmethod
    def from_dict(cls, obj: dict) -> "KrausChannel":
        return cls.from_ops([decode_matrix(a) for a in obj["kraus"]])


def apply_channel(phi: KrausChannel, q) -> TraceClassOperator:
    m = q.matrix if isinstance(q, TraceClassOperator) else as_matrix(q)
    if m.shape != (phi.dim_in, phi.dim_in):
        raise DimMismatch(f"state of shape {m.shape}, channel input dim {phi.dim_in}")
    out = sum(a @ m @ dagger(a) for a in phi.kraus_ops)
    return make_trace_class(0.5 * (out + dagger(out)))


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel.from_ops([np.eye(dim)])


def mixed_unitary(weights, unitaries) -> KrausChannel:
    """``Q -> sum_i p_i U_i Q U_i^dag``."""
    p = np.asarray(weights, dtype=float)
    if p.ndim != 1 or p.size != len(unitaries) or np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
        raise WeightsInvalid("weights must be non-negative and sum to 1")
    ops = []
    for w, u in zip(p, unitaries):
        u = as_matrix(u)
        if not is_unitary(u):
            raise NotUnitary("mixed_unitary received a non-unitary operator")
        ops.append(np.sqrt(w) * u)
    return KrausChannel.from_ops(ops)


def depolarizing(dim: int, p: float) -> KrausChannel:
    """``Q -> (1-p) Q + p Tr[Q] I/dim`` via the Weyl (clock and shift) operators."""
    omega = np.exp(2j * np.pi / dim)
    shift = np.roll(np.eye(dim), 1, axis=0)
    clock = np.diag(omega ** np.arange(dim))
    unitaries, weights = [], []
    for a in range(dim):
        for b in range(dim):
            unitaries.append(np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b))
            weights.append(p / dim ** 2)
    weights[0] += 1.0 - p
    return mixed_unitary(weights, unitaries)


def partial_trace_channel(dims: tuple[int, int], keep: str = "A") -> KrausChannel:
    """Kraus form of the partial trace: ``I_A (x) <i|`` (keep A) or ``<i| (x) I_B``."""
    da, db = dims
    keep = keep.upper()
    if keep == "A":
        ops = [np.kron(np.eye(da), np.eye(db)[i:i + 1, :]) for i in range(db)]
    elif keep == "B":
        ops = [np.kron(np.eye(da)[i:i + 1, :], np.eye(db)) for i in range(da)]
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return KrausChannel.from_ops(ops)


def _check_dims(dim: int, dims) -> tuple[int, int]:
    da, db = int(dims[0]), int(dims[1])
    if da < 1 or db < 1 or da * db != dim:
        raise DimFactorizationMismatch(f"dimension {dim} does not factor as {da}x{db}")
    return da, db


def partial_trace(q, dims, keep: str = "A") -> DensityMatrix:
    q = as_density(q)
    dims = _check_dims(q.dim, dims)
    return make_density(apply_channel(partial_trace_channel(dims, keep), q).matrix)


def _det_margin(phi: KrausChannel, q: DensityMatrix) -> tuple[float, float, float]:
    before = det_spectral(q).value.real
    after = det_spectral(apply_channel(phi, q)).value.real
    return before - after, before, after


def check_det_contraction(phi: KrausChannel, q, claim_id: str = "thm38-det-contraction",
                          report: ClaimReport | None = None) -> ClaimReport:
    """Test ``det(I + Phi(Q)) <= det(I + Q)`` for one (channel, state) pair.

    Gated on the row condition ``sum A_i A_i^dag <= I``.
    """
    if not phi.row_contractive:
        raise KrausConditionUnmet("channel violates sum A_i A_i^dag <= I")
    q = as_density(q)
    report = report or ClaimReport(claim_id)
    margin, before, after = _det_margin(phi, q)
    report.record(margin, margin < -MARGIN_TOL, lambda: {
        "check": "det-contraction",
        "state": encode_matrix(q.matrix),
        "channel": phi.to_dict(),
        "det_before": before,
        "det_after": after,
        "margin": margin,
    })
    return report


def check_separable_contraction(phi_a: KrausChannel, phi_b: KrausChannel, q,
                                report: ClaimReport | None = None) -> ClaimReport:
    """``det(I + (Phi_A (x) Phi_B)(Q)) <= det(I + Q)``."""
    q = as_density(q)
    if phi_a.dim_in * phi_b.dim_in != q.dim:
        raise DimMismatch(
            f"channel input dims {phi_a.dim_in}x{phi_b.dim_in} vs state dim {q.dim}")
    phi = phi_a.tensor(phi_b)
    report = report or ClaimReport("separable-det-contraction")
    margin, before, after = _det_margin(phi, q)
    report.record(margin, margin < -MARGIN_TOL, lambda: {
        "check": "det-contraction",
        "state": encode_matrix(q.matrix),
        "channel": phi.to_dict(),
        "det_before": before,
        "det_after": after,
        "margin": margin,
    })
    return report


def check_fen_reduction(q, dims, keep: str = "A",
                        report: ClaimReport | None = None) -> ClaimReport:
    """``FEN+(Q^A) <= FEN+(Q)`` for the reduced state."""
    q = as_density(q)
    dims = _check_dims(q.dim, dims)
    reduced = partial_trace(q, dims, keep)
    full, part = fen(q).plus, fen(reduced).plus
    margin = full - part
    report = report or ClaimReport("fen-partial-trace")
    report.record(margin, margin < -MARGIN_TOL, lambda: {
        "check": "fen-reduction",
        "state": encode_matrix(q.matrix),
        "dims": list(dims),
        "keep": keep,
        "fen_full": full,
        "fen_reduced": part,
        "margin": margin,
    })
    return report


def replay_witness(witness: dict) -> float:
    """Recompute the margin stored in a serialized witness."""
    check = witness["check"]
    q = decode_matrix(witness["state"])
    if check == "det-contraction":
        phi = KrausChannel.from_dict(witness["channel"])
        return _det_margin(phi, as_density(q))[0]
    if check == "fen-reduction":
        q = as_density(q)
        reduced = partial_trace(q, witness["dims"], witness["keep"])
        return fen(q).plus - fen(reduced).plus
    raise ValueError(f"unknown witness kind {check!r}")
