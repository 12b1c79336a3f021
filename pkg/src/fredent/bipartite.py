"""Bipartite states: Schmidt data, Gram operators, gramian volume and realignment.

Pure states on ``H_A (x) H_B`` are stored as coefficient matrices ``psi`` with
rows indexed by A and columns by B, so ``|psi> = sum_ij psi[i, j] |i>|j>``
and the flattened vector is ``psi.ravel()`` (row-major, A-major).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import block_diag

from .channels import _check_dims, partial_trace
from .entropy import EntropyOperator, Sign, entropy_operator, fen, fen_sum, fen_trace_class
from .errors import DimMismatch, NotNormalized, WeightsInvalid
from .fredholm import det_spectral
from .linalg import (
    TraceClassOperator,
    as_density,
    as_matrix,
    as_trace_class,
    dagger,
    make_density,
    svd,
)
from .reports import ClaimReport, encode_matrix

NORM_TOL = 1e-10
REALIGN_TOL = 1e-10
RDM_WEIGHT_CUTOFF = 1e-12


@dataclass(frozen=True, eq=False)
class PureBipartiteState:
    coeffs: np.ndarray
    schmidt: np.ndarray

    @classmethod
    def from_coeffs(cls, psi) -> "PureBipartiteState":
        psi = as_matrix(psi)
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"Frobenius norm is {norm!r}, expected 1")
        psi = psi.copy()
        psi.setflags(write=False)
        s = np.linalg.svd(psi, compute_uv=False)
        s.setflags(write=False)
        return cls(psi, s)

    @classmethod
    def from_vector(cls, vec, dims) -> "PureBipartiteState":
        da, db = dims
        return cls.from_coeffs(np.asarray(vec, dtype=np.complex128).reshape(da, db))

    @property
    def dims(self) -> tuple[int, int]:
        return self.coeffs.shape

    def vector(self) -> np.ndarray:
        return self.coeffs.ravel()

    def density(self):
        v = self.vector()
        return make_density(np.outer(v, v.conj()))


def as_pure(psi) -> PureBipartiteState:
    return psi if isinstance(psi, PureBipartiteState) else PureBipartiteState.from_coeffs(psi)


@dataclass(frozen=True, eq=False)
class GramOperators:
    delta_a: TraceClassOperator
    delta_b: TraceClassOperator


def schmidt_decompose(psi) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Schmidt coefficients and bases: ``psi = sum_n tau_n |phi_n> |omega_n>``.

    Returns ``(tau, phi, omega)`` with ``phi[:, n]`` in H_A and
    ``omega[:, n]`` in H_B.  Since the coefficient matrix is
    ``U diag(tau) V^dag``, the B vectors are the complex conjugates of the
    right singular vectors.
    """
    psi = as_pure(psi)
    u, s, v = svd(psi.coeffs)
    return s, u, v.conj()


def gram_operators(psi) -> GramOperators:
    """``Delta^A_ij = <F_j^B | F_i^B>`` and ``Delta^B_ij = <F_j^A | F_i^A>``.

    ``F_i^B`` is row ``i`` of the coefficient matrix and ``F_j^A`` column
    ``j``; the two Gram matrices are the reduced density matrices.
    """
    c = as_pure(psi).coeffs
    # <F_j^B|F_i^B> = sum_k conj(c[j,k]) c[i,k];  <F_j^A|F_i^A> = sum_k conj(c[k,j]) c[k,i]
    delta_a = c @ dagger(c)
    delta_b = c.T @ c.conj()
    return GramOperators(as_trace_class(_herm(delta_a)), as_trace_class(_herm(delta_b)))


def _herm(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + dagger(m))


def gramian_function(psi, z: complex = 1.0) -> complex:
    """``G(psi)(z) = prod_n (1 + z tau_n^2)``."""
    tau = as_pure(psi).schmidt
    return complex(np.prod(1.0 + z * tau.astype(np.complex128) ** 2))


def gramian_volume(psi) -> float:
    return gramian_function(psi, 1.0).real


def log_gramian(psi) -> float:
    tau = as_pure(psi).schmidt
    return math.fsum(np.log1p(tau ** 2))


def fen_pure(psi) -> float:
    return fen_sum(as_pure(psi).schmidt ** 2)


def s_minus_pure(psi) -> EntropyOperator:
    return entropy_operator(gram_operators(psi).delta_a, Sign.MINUS)


def renorm_kronecker(qa, qb) -> TraceClassOperator:
    """Non-identity part of ``(I + Q_A) (x)_r (I + Q_B) = I + Q_A (x) Q_B``."""
    a, b = as_trace_class(qa), as_trace_class(qb)
    return as_trace_class(np.kron(a.matrix, b.matrix))


def kronecker_det_identity_check(qa, qb, rtol: float = 1e-8) -> ClaimReport:
    """``det(Q_A (x) Q_B) = det(I_A (x) Q_B) * det(Q_A (x) I_B)``.

    This is the factorization ``Q_A (x) Q_B = (I (x) Q_B)(Q_A (x) I)``; it
    equals ``det(Q_A)^N_B det(Q_B)^N_A``.  See
    :func:`kronecker_literal_exponent_check` for the variant that raises each
    factor to a further power.
    """
    a, b = as_matrix(qa), as_matrix(qb)
    na, nb = a.shape[0], b.shape[0]
    lhs = np.linalg.det(np.kron(a, b))
    rhs = np.linalg.det(np.kron(np.eye(na), b)) * np.linalg.det(np.kron(a, np.eye(nb)))
    return _identity_report("kronecker-det", lhs, rhs, rtol, a, b)


def kronecker_literal_exponent_check(qa, qb, rtol: float = 1e-8) -> ClaimReport:
    """``det(Q_A (x) Q_B) = det(I_A (x) Q_B)^N_A * det(Q_A (x) I_B)^N_B``, read literally."""
    a, b = as_matrix(qa), as_matrix(qb)
    na, nb = a.shape[0], b.shape[0]
    lhs = np.linalg.det(np.kron(a, b))
    rhs = (np.linalg.det(np.kron(np.eye(na), b)) ** na
           * np.linalg.det(np.kron(a, np.eye(nb))) ** nb)
    return _identity_report("kronecker-literal-exponents", lhs, rhs, rtol, a, b)


def _identity_report(claim_id, lhs, rhs, rtol, a, b) -> ClaimReport:
    scale = max(abs(lhs), abs(rhs), 1e-300)
    deviation = abs(lhs - rhs) / scale
    report = ClaimReport(claim_id)
    report.record(-deviation, deviation > rtol,
                  lambda: {"qa": encode_matrix(a), "qb": encode_matrix(b)})
    report.details = {"lhs": [float(np.real(lhs)), float(np.imag(lhs))],
                      "rhs": [float(np.real(rhs)), float(np.imag(rhs))]}
    return report


def fen_block_additivity(blocks, tol: float = 1e-10) -> ClaimReport:
    """``FEN(+)_i l_i Q_i) = sum_i FEN(l_i Q_i)`` with each term on the scaled block."""
    weights = np.array([w for w, _ in blocks], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
        raise WeightsInvalid("block weights must be non-negative and sum to 1")
    states = [as_density(q) for _, q in blocks]
    total = make_density(block_diag(*[w * q.matrix for w, q in zip(weights, states)]))
    lhs = fen(total).plus
    rhs = math.fsum(fen_trace_class(w * q.matrix) for w, q in zip(weights, states))
    report = ClaimReport("fen-block-additivity")
    report.record(-abs(lhs - rhs), abs(lhs - rhs) > tol,
                  lambda: {"weights": weights.tolist(),
                           "blocks": [encode_matrix(q.matrix) for q in states]})
    report.details = {"lhs": lhs, "rhs": rhs}
    return report


def mixed_state_rdm_decomposition(q, dims) -> list[tuple[float, np.ndarray, np.ndarray]]:
    """Split ``Q = sum_n l_n |Psi_n><Psi_n|`` into local reduced states.

    Returns ``(l_n, Q_n^A, Q_n^B)`` per nonzero eigenvalue, where ``Q_n^A`` and
    ``Q_n^B`` are the Gram operators of the eigenvector ``Psi_n``.
    """
    q = as_density(q)
    da, db = _check_dims(q.dim, dims)
    out = []
    for lam, vec in zip(q.spectrum, q.eigenbasis.T):
        if lam <= RDM_WEIGHT_CUTOFF:
            continue
        g = gram_operators(PureBipartiteState.from_vector(vec / np.linalg.norm(vec), (da, db)))
        out.append((float(lam), np.asarray(g.delta_a.matrix), np.asarray(g.delta_b.matrix)))
    return out


def realign(q, dims) -> np.ndarray:
    """``R[(i,i'), (j,j')] = Q[(i,j), (i',j')]`` with row-major pair indices."""
    m = q.matrix if hasattr(q, "matrix") else as_matrix(q)
    da, db = _check_dims(m.shape[0], dims)
    return m.reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)


def operator_schmidt(q, dims) -> tuple[np.ndarray, list[np.ndarray], list[np.ndarray]]:
    """``Q = sum_n tau_n Omega_n^A (x) Omega_n^B`` with HS-orthonormal factors."""
    q = as_density(q)
    da, db = _check_dims(q.dim, dims)
    u, s, v = svd(realign(q, (da, db)))
    omega_a = [u[:, n].reshape(da, da) for n in range(s.size)]
    omega_b = [v[:, n].conj().reshape(db, db) for n in range(s.size)]
    return s, omega_a, omega_b


def hermitian_basis(dim: int) -> list[np.ndarray]:
    """HS-orthonormal Hermitian basis: ``I/sqrt(d)``, off-diagonal pairs, diagonal differences."""
    basis = [np.eye(dim, dtype=np.complex128) / math.sqrt(dim)]
    for j in range(dim):
        for k in range(j + 1, dim):
            sym = np.zeros((dim, dim), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1 / math.sqrt(2)
            anti = np.zeros((dim, dim), dtype=np.complex128)
            anti[j, k] = -1j / math.sqrt(2)
            anti[k, j] = 1j / math.sqrt(2)
            basis += [sym, anti]
    for l in range(1, dim):
        d = np.zeros(dim)
        d[:l] = 1.0
        d[l] = -l
        basis.append(np.diag(d / math.sqrt(l * (l + 1))).astype(np.complex128))
    return basis


def hermitian_operator_schmidt(q, dims) -> tuple[np.ndarray, list[np.ndarray], list[np.ndarray]]:
    """Schmidt decomposition inside the real space of Hermitian operators.

    Expanding ``Q`` in product Hermitian bases gives a real coefficient
    matrix; its real SVD yields Hermitian factors.
    """
    q = as_density(q)
    da, db = _check_dims(q.dim, dims)
    ea, eb = hermitian_basis(da), hermitian_basis(db)
    r = realign(q, (da, db))
    # Tr[(E_a (x) F_b) Q] = vec(E_a)^T R vec(F_b), all Hermitian so conj(vec) = vec(transpose)
    va = np.array([e.T.ravel() for e in ea])
    vb = np.array([f.T.ravel() for f in eb])
    coeffs = (va @ r @ vb.T).real
    u, s, vt = np.linalg.svd(coeffs, full_matrices=False)
    omega_a = [sum(u[i, n] * ea[i] for i in range(len(ea))) for n in range(s.size)]
    omega_b = [sum(vt[n, j] * eb[j] for j in range(len(eb))) for n in range(s.size)]
    return s, omega_a, omega_b


class RealignmentVerdict(str, Enum):
    ENTANGLEMENT_DETECTED = "entanglement_detected"
    NOT_DETECTED = "not_detected"


def realignment_criterion(q, dims) -> tuple[float, RealignmentVerdict]:
    tau, _, _ = operator_schmidt(q, dims)
    total = math.fsum(tau)
    verdict = (RealignmentVerdict.ENTANGLEMENT_DETECTED if total > 1.0 + REALIGN_TOL
               else RealignmentVerdict.NOT_DETECTED)
    return total, verdict


def apply_local_unitaries(psi, u_a, u_b) -> PureBipartiteState:
    """``(U_A (x) U_B)|psi>`` acts on the coefficient matrix as ``U_A psi U_B^T``."""
    psi = as_pure(psi)
    u_a, u_b = as_matrix(u_a), as_matrix(u_b)
    if u_a.shape[0] != psi.dims[0] or u_b.shape[0] != psi.dims[1]:
        raise DimMismatch(f"unitaries of dims {u_a.shape[0]}, {u_b.shape[0]} for state {psi.dims}")
    return PureBipartiteState.from_coeffs(u_a @ psi.coeffs @ u_b.T)


def local_unitary_invariance_check(psi, u_a, u_b, tol: float = 1e-10,
                                   report: ClaimReport | None = None) -> ClaimReport:
    psi = as_pure(psi)
    moved = apply_local_unitaries(psi, u_a, u_b)
    deviation = max(
        abs(gramian_volume(psi) - gramian_volume(moved)),
        abs(log_gramian(psi) - log_gramian(moved)),
        abs(fen_pure(psi) - fen_pure(moved)),
    )
    report = report or ClaimReport("local-unitary-invariance")
    report.record(-deviation, deviation > tol, lambda: {
        "psi": encode_matrix(psi.coeffs),
        "u_a": encode_matrix(u_a),
        "u_b": encode_matrix(u_b),
    })
    return report


def gramian_local_channel_probe(psi, phi_a, report: ClaimReport | None = None) -> ClaimReport:
    """Compare ``G(psi)`` with ``det(I + reduced output)`` after a channel on A.

    The gramian volume is only defined for pure states; on the mixed output
    this uses the reduced state on A as a stand-in.
    """
    from .channels import apply_channel, identity_channel

    psi = as_pure(psi)
    da, db = psi.dims
    out = apply_channel(phi_a.tensor(identity_channel(db)), psi.density())
    reduced = partial_trace(make_density(out.matrix), (phi_a.dim_out, db), "A")
    before = gramian_volume(psi)
    after = det_spectral(reduced).value.real
    report = report or ClaimReport("gramian-local-channel")
    margin = before - after
    report.record(margin, margin < -1e-10, lambda: {
        "psi": encode_matrix(psi.coeffs), "channel": phi_a.to_dict(),
        "before": before, "after": after})
    return report
