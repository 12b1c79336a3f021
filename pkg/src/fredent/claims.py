"""Registry of checkable claims used by ``fredent verify``.

Each claim has an expected status.  ``holds`` claims must finish with zero
violations; ``documented-counterexample`` claims must reproduce at least one
violation, starting from a fixed deterministic witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import sampling
from .bipartite import (
    fen_block_additivity,
    gramian_local_channel_probe,
    kronecker_det_identity_check,
    kronecker_literal_exponent_check,
    local_unitary_invariance_check,
    realignment_criterion,
)
from .channels import (
    KrausChannel,
    check_det_contraction,
    check_fen_reduction,
    check_separable_contraction,
    depolarizing,
    identity_channel,
    mixed_unitary,
)
from .entropy import log_continuity_probe, renorm_log
from .errors import UnknownClaim
from .fredholm import det_product_identity_check, direct_sum_identity_check
from .linalg import make_density, trace_norm
from .majorization import conversion_channel_for_state, m_implies_additive_probe
from .reports import ClaimReport, encode_matrix

HOLDS = "holds"
COUNTEREXAMPLE = "documented-counterexample"

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    expected: str
    description: str
    run: Callable[[int, int, int], ClaimReport]

    def outcome_matches(self, report: ClaimReport) -> bool:
        if self.expected == HOLDS:
            return report.violations == 0
        return report.violations > 0


def _dim(rng, max_dim: int, low: int = 1) -> int:
    return int(rng.integers(low, max(low, max_dim) + 1))


def det_contraction_witness() -> tuple[KrausChannel, np.ndarray]:
    """``Phi(Q) = (Q + XQX)/2`` applied to ``Q = diag(1, 0)``: det 2 -> 2.25."""
    phi = mixed_unitary([0.5, 0.5], [np.eye(2), PAULI_X])
    return phi, np.diag([1.0, 0.0])


def fen_partial_trace_witness() -> tuple[np.ndarray, tuple[int, int]]:
    """Maximally mixed state on C^2 (x) C^2."""
    return np.eye(4) / 4, (2, 2)


def _run_det_contraction(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    phi, q = det_contraction_witness()
    report = check_det_contraction(phi, q)
    for _ in range(max(trials - 1, 0)):
        d = _dim(rng, dim, 2)
        k = int(rng.integers(1, 4))
        weights = rng.dirichlet(np.ones(k))
        unitaries = [sampling.random_unitary(rng, d) for _ in range(k)]
        state = sampling.random_density(rng, d, rank=int(rng.integers(1, d + 1)))
        check_det_contraction(mixed_unitary(weights, unitaries), state, report=report)
    return report


def _run_fen_partial_trace(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    q, dims = fen_partial_trace_witness()
    report = check_fen_reduction(q, dims)
    for _ in range(max(trials - 1, 0)):
        da, db = _dim(rng, dim), _dim(rng, dim)
        state = sampling.random_density(rng, da * db, rank=int(rng.integers(1, da * db + 1)))
        check_fen_reduction(state, (da, db), report=report)
    return report


def _run_separable(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    product = np.zeros((4, 4))
    product[0, 0] = 1.0
    report = check_separable_contraction(depolarizing(2, 1.0), identity_channel(2), product)
    for _ in range(max(trials - 1, 0)):
        da, db = _dim(rng, dim, 2), _dim(rng, dim, 2)
        phi_a = depolarizing(da, float(rng.random()))
        phi_b = mixed_unitary([1.0], [sampling.random_unitary(rng, db)])
        state = sampling.random_density(rng, da * db, rank=int(rng.integers(1, da * db + 1)))
        check_separable_contraction(phi_a, phi_b, state, report=report)
    return report


def _run_gramian_channel(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    psi = np.zeros((2, 2))
    psi[0, 0] = 1.0
    report = gramian_local_channel_probe(psi, depolarizing(2, 1.0))
    for _ in range(max(trials - 1, 0)):
        da, db = _dim(rng, dim, 2), _dim(rng, dim, 2)
        state = sampling.random_pure_coeffs(rng, da, db)
        gramian_local_channel_probe(state, depolarizing(da, float(rng.random())), report=report)
    return report


def _run_local_unitary(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    report = ClaimReport("local-unitary-invariance")
    for _ in range(trials):
        da, db = _dim(rng, dim), _dim(rng, dim)
        psi = sampling.random_pure_coeffs(rng, da, db)
        local_unitary_invariance_check(psi, sampling.random_unitary(rng, da),
                                       sampling.random_unitary(rng, db), report=report)
    return report


def _merge_runs(claim_id: str, reports) -> ClaimReport:
    out = ClaimReport(claim_id)
    for r in reports:
        r.claim_id = claim_id
        out = out.merge(r)
    out.details = {}
    return out


def _run_direct_sum(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    return _merge_runs("appA-direct-sum", (
        direct_sum_identity_check(sampling.random_psd(rng, _dim(rng, dim)),
                                  sampling.random_psd(rng, _dim(rng, dim)))
        for _ in range(trials)))


def _run_product_identity(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    reports = []
    for _ in range(trials):
        d = _dim(rng, dim)
        reports.append(det_product_identity_check(sampling.random_psd(rng, d),
                                                  sampling.random_psd(rng, d)))
    return _merge_runs("appA-product-identity", reports)


def _monotone_pair(rng, d):
    a = sampling.random_psd(rng, d)
    b = a + sampling.random_psd(rng, d, rank=int(rng.integers(1, d + 1)))
    return a, b


def _run_operator_monotone(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    report = ClaimReport("appC-operator-monotone")
    for _ in range(trials):
        a, b = _monotone_pair(rng, _dim(rng, dim))
        gap = renorm_log(b) - renorm_log(a)
        margin = float(np.linalg.eigvalsh(gap)[0])
        report.record(margin, margin < -1e-9,
                      lambda: {"a": encode_matrix(a), "b": encode_matrix(b)})
    return report


def _run_operator_concave(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    report = ClaimReport("appC-operator-concave")
    for _ in range(trials):
        d = _dim(rng, dim)
        a, b = sampling.random_psd(rng, d), sampling.random_psd(rng, d)
        for tau in (0.25, 0.5, 0.75):
            gap = (renorm_log(tau * a + (1 - tau) * b)
                   - tau * renorm_log(a) - (1 - tau) * renorm_log(b))
            margin = float(np.linalg.eigvalsh(gap)[0])
            report.record(margin, margin < -1e-9, lambda: {
                "a": encode_matrix(a), "b": encode_matrix(b), "tau": tau})
    return report


def _run_log_bounds(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    report = ClaimReport("appC-log-bounds")
    for _ in range(trials):
        q = make_density(sampling.random_density(rng, _dim(rng, dim)))
        log_q = renorm_log(q)
        margin = min(trace_norm(q.matrix) - trace_norm(log_q),
                     1.0 - float(np.trace(log_q).real))
        report.record(margin, margin < -1e-12, lambda: {"q": encode_matrix(q.matrix)})
    return report


def _run_log_continuity(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    reports = []
    while len(reports) < trials:
        d = _dim(rng, dim, 2)
        q1 = make_density(sampling.random_density(rng, d))
        q2 = make_density(sampling.random_density(rng, d))
        if max(q1.spectral_radius, q2.spectral_radius) > 0.9:
            continue
        reports.append(log_continuity_probe(q1, q2))
    return _merge_runs("log-continuity", reports)


def _run_m_implies_additive(trials: int, seed: int, dim: int) -> ClaimReport:
    return m_implies_additive_probe(trials, max(dim, 1), seed)


def _run_kronecker(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    reports = [kronecker_det_identity_check(np.diag([2.0, 1.0]), np.diag([3.0, 1.0]))]
    for _ in range(max(trials - 1, 0)):
        a, b = _square_pair(rng, dim)
        reports.append(kronecker_det_identity_check(a, b))
    return _merge_runs("kronecker-det", reports)


def _square_pair(rng, dim):
    da, db = _dim(rng, min(dim, 4)), _dim(rng, min(dim, 4))
    return sampling.ginibre(rng, da, da), sampling.ginibre(rng, db, db)


def _run_kronecker_literal(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    reports = [kronecker_literal_exponent_check(np.diag([2.0, 1.0]), np.diag([3.0, 1.0]))]
    for _ in range(max(trials - 1, 0)):
        a, b = _square_pair(rng, dim)
        reports.append(kronecker_literal_exponent_check(a, b))
    return _merge_runs("kronecker-literal-exponents", reports)


def _run_block_additivity(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    reports = []
    for _ in range(trials):
        k = int(rng.integers(1, 4))
        weights = rng.dirichlet(np.ones(k))
        blocks = [(w, sampling.random_density(rng, _dim(rng, dim))) for w in weights]
        reports.append(fen_block_additivity(blocks))
    return _merge_runs("fen-block-additivity", reports)


def random_separable(rng, da: int, db: int, terms: int) -> np.ndarray:
    weights = rng.dirichlet(np.ones(terms))
    out = np.zeros((da * db, da * db), dtype=np.complex128)
    for w in weights:
        ra = sampling.random_density(rng, da, rank=int(rng.integers(1, da + 1)))
        rb = sampling.random_density(rng, db, rank=int(rng.integers(1, db + 1)))
        out += w * np.kron(ra, rb)
    return 0.5 * (out + out.conj().T)


def _run_realignment(trials: int, seed: int, dim: int) -> ClaimReport:
    rng = sampling.rng_from(seed)
    report = ClaimReport("realignment-separable")
    for _ in range(trials):
        da, db = _dim(rng, min(dim, 4)), _dim(rng, min(dim, 4))
        q = random_separable(rng, da, db, int(rng.integers(1, 21)))
        total, _ = realignment_criterion(q, (da, db))
        margin = 1.0 - total
        report.record(margin, margin < -1e-10,
                      lambda: {"q": encode_matrix(q), "dims": [da, db]})
    return report


def _run_alberti_uhlmann(trials: int, seed: int, dim: int) -> ClaimReport:
    from .channels import apply_channel

    rng = sampling.rng_from(seed)
    report = ClaimReport("alberti-uhlmann")
    for _ in range(trials):
        d = _dim(rng, dim, 2)
        b = sampling.random_spectrum(rng, d)
        a = np.sort(sampling.random_doubly_stochastic(rng, d) @ b)[::-1]
        q = make_density(sampling.density_with_spectrum(rng, b))
        phi = conversion_channel_for_state(q, a)
        out = apply_channel(phi, q)
        err = float(np.max(np.abs(out.spectrum - a)))
        report.record(-err, err > 1e-9, lambda: {"a": a.tolist(), "b": b.tolist()})
    return report


REGISTRY: dict[str, Claim] = {c.claim_id: c for c in [
    Claim("thm38-det-contraction", COUNTEREXAMPLE,
          "det(I + Phi(Q)) <= det(I + Q) for quantum operations", _run_det_contraction),
    Claim("fen-partial-trace", COUNTEREXAMPLE,
          "FEN+(Q^A) <= FEN+(Q) for the reduced state", _run_fen_partial_trace),
    Claim("separable-det-contraction", COUNTEREXAMPLE,
          "det(I + (Phi_A x Phi_B)(Q)) <= det(I + Q)", _run_separable),
    Claim("gramian-local-channel", COUNTEREXAMPLE,
          "gramian volume does not increase under a local channel", _run_gramian_channel),
    Claim("kronecker-literal-exponents", COUNTEREXAMPLE,
          "det(QA x QB) = det(I x QB)^NA det(QA x I)^NB as written", _run_kronecker_literal),
    Claim("local-unitary-invariance", HOLDS,
          "G, g and FEN of pure states are local-unitary invariant", _run_local_unitary),
    Claim("appA-direct-sum", HOLDS,
          "det(I + A (+) B) = det(I + A) det(I + B)", _run_direct_sum),
    Claim("appA-product-identity", HOLDS,
          "det(I + A) det(I + B) = det((I + A)(I + B))", _run_product_identity),
    Claim("appC-operator-monotone", HOLDS,
          "A <= B implies log(I + A) <= log(I + B)", _run_operator_monotone),
    Claim("appC-operator-concave", HOLDS,
          "log(I + .) is operator concave", _run_operator_concave),
    Claim("appC-log-bounds", HOLDS,
          "||log(I+Q)||_1 <= ||Q||_1 and Tr log(I+Q) <= 1 for states", _run_log_bounds),
    Claim("log-continuity", HOLDS,
          "||log(I+Q) - log(I+Q')||_1 <= ||Q - Q'||_1 / (1 - tau)", _run_log_continuity),
    Claim("m-implies-additive", HOLDS,
          "multiplicative majorization implies additive majorization", _run_m_implies_additive),
    Claim("kronecker-det", HOLDS,
          "det(QA x QB) = det(I x QB) det(QA x I)", _run_kronecker),
    Claim("fen-block-additivity", HOLDS,
          "FEN of a direct sum is the sum over scaled blocks", _run_block_additivity),
    Claim("realignment-separable", HOLDS,
          "separable states have operator-Schmidt sum <= 1", _run_realignment),
    Claim("alberti-uhlmann", HOLDS,
          "majorized spectra are reachable by a mixed-unitary channel", _run_alberti_uhlmann),
]}


def get_claim(claim_id: str) -> Claim:
    try:
        return REGISTRY[claim_id]
    except KeyError:
        raise UnknownClaim(
            f"unknown claim {claim_id!r}; known: {', '.join(sorted(REGISTRY))}") from None


def run_claim(claim_id: str, trials: int = 100, seed: int = 0, dim: int = 4) -> ClaimReport:
    claim = get_claim(claim_id)
    report = claim.run(trials, seed, dim)
    report.claim_id = claim_id
    status = HOLDS if report.violations == 0 else COUNTEREXAMPLE
    report.details = {**report.details, "expected": claim.expected, "status": status,
                      "matches_expected": claim.outcome_matches(report),
                      "seed": seed, "dim": dim}
    return report
