"""Acceptance criteria, one test per criterion at the stated tolerances.

Run ``pytest tests/test_acceptance.py`` to get one PASS/FAIL line per
criterion in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from conftest import bell_density
from fredent.bipartite import (
    PureBipartiteState,
    apply_local_unitaries,
    fen_block_additivity,
    gram_operators,
    gramian_volume,
    log_gramian,
    realignment_criterion,
)
from fredent.claims import random_separable, run_claim
from fredent.cli import main
from fredent.entropy import fen, fen_uniform, frechet_derivative_log, renorm_log
from fredent.fredholm import (
    det_direct,
    det_direct_sum,
    det_grothendieck,
    det_plemelj,
    det_spectral,
    wedge_trace,
    wedge_trace_oracle,
)
from fredent.linalg import make_density, projector, trace_norm
from fredent.majorization import conversion_channel_for_state, m_implies_additive_probe
from fredent.sampling import (
    density_with_spectrum,
    ginibre,
    random_density,
    random_doubly_stochastic,
    random_psd,
    random_pure_coeffs,
    random_spectrum,
    random_unitary,
    rng_from,
)

LN2 = math.log(2)


@pytest.mark.criterion(1, "FEN of pure states is 2 ln 2 up to dim 64, < 1 s")
def test_criterion_01_fen_pure():
    rng = rng_from(1)
    start = time.perf_counter()
    for dim in range(1, 65):
        v = random_unitary(rng, dim)[:, 0]
        assert abs(fen(projector(v)).plus - 2 * LN2) <= 1e-10
    assert time.perf_counter() - start < 1.0
    assert 2 * LN2 == pytest.approx(1.3862944, abs=1e-7)


@pytest.mark.criterion(2, "FEN of uniform spectrum has closed form and tends to 1, < 1 s")
def test_criterion_02_fen_uniform():
    start = time.perf_counter()
    for n in (1, 2, 3, 10, 100, 1000):
        assert fen(np.eye(n) / n).plus == pytest.approx((n + 1) * math.log(1 + 1 / n), rel=1e-13)
    value = fen_uniform(10 ** 6)
    assert abs(value - 1) < 1e-6
    # the spectral evaluation on the full spectrum agrees with the closed form
    spectrum = np.full(10 ** 6, 1e-6)
    assert math.fsum((1 + spectrum) * np.log1p(spectrum)) == pytest.approx(value, rel=1e-12)
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(3, "determinant routes agree on 500 random states, < 30 s")
def test_criterion_03_route_agreement():
    rng = rng_from(3)
    start = time.perf_counter()
    plemelj_checked = 0
    for _ in range(500):
        dim = int(rng.integers(1, 17))
        q = make_density(random_density(rng, dim, rank=int(rng.integers(1, dim + 1))))
        ref = det_spectral(q).value
        assert det_grothendieck(q).value == pytest.approx(ref, rel=1e-9)
        assert det_direct(q.matrix).value == pytest.approx(ref, rel=1e-9)
        if q.spectral_radius <= 0.9:
            plemelj_checked += 1
            assert det_plemelj(q).value == pytest.approx(ref, rel=1e-8)
    assert plemelj_checked > 100
    assert time.perf_counter() - start < 30.0


@pytest.mark.criterion(4, "entire-function bound |det(I+zA)| <= exp(|z| ||A||_1)")
def test_criterion_04_envelope():
    rng = rng_from(4)
    violations = 0
    for i in range(100):
        dim = int(rng.integers(1, 9))
        z = 10 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        if i % 2:
            a = ginibre(rng, dim, dim) * rng.uniform(0.01, 1.0)
            value = det_direct(a, z).value
        else:
            a = random_psd(rng, dim, scale=rng.uniform(0.01, 3.0))
            value = det_spectral(a, z).value
        bound = math.exp(abs(z) * trace_norm(a))
        violations += abs(value) > bound * (1 + 1e-12)
    assert violations == 0


@pytest.mark.criterion(5, "wedge trace matches antisymmetrizer; Tr[wedge^n Q] <= 1/n!")
def test_criterion_05_wedge():
    rng = rng_from(5)
    for dim in range(1, 7):
        for _ in range(5):
            a = random_psd(rng, dim, rank=int(rng.integers(1, dim + 1)), scale=rng.uniform(0.1, 3))
            for n in range(0, min(3, dim) + 1):
                assert abs(wedge_trace(a, n) - wedge_trace_oracle(a, n)) <= 1e-10
    for _ in range(200):
        dim = int(rng.integers(1, 17))
        q = random_density(rng, dim)
        for n in range(dim + 1):
            assert wedge_trace(q, n) <= 1 / math.factorial(n) + 1e-15


@pytest.mark.criterion(6, "multiplicative implies additive majorization, 10^4 pairs")
def test_criterion_06_m_implies_additive():
    report = m_implies_additive_probe(trials=10_000, dim=8, seed=6)
    assert report.trials == 10_000
    assert report.details["hypothesis_incidence"] > 1000
    assert report.violations == 0


@pytest.mark.criterion(7, "Alberti-Uhlmann mixed-unitary conversion, 100 pairs")
def test_criterion_07_alberti_uhlmann():
    rng = rng_from(7)
    for _ in range(100):
        dim = int(rng.integers(1, 7))
        b = random_spectrum(rng, dim)
        a = np.sort(random_doubly_stochastic(rng, dim) @ b)[::-1]
        q = make_density(density_with_spectrum(rng, b))
        out = conversion_channel_for_state(q, a)(q)
        assert np.max(np.abs(np.linalg.eigvalsh(out.matrix)[::-1] - a)) <= 1e-9


@pytest.mark.criterion(8, "gramian bounds, three computation paths, local-unitary invariance")
def test_criterion_08_gramian():
    rng = rng_from(8)
    for _ in range(10_000):
        da, db = int(rng.integers(1, 9)), int(rng.integers(1, 13))
        psi = PureBipartiteState.from_coeffs(random_pure_coeffs(rng, da, db))
        g_val = gramian_volume(psi)
        assert 2 - 1e-10 <= g_val <= math.e + 1e-10
        assert LN2 - 1e-10 <= log_gramian(psi) <= 1 + 1e-10
        grams = gram_operators(psi)
        assert abs(det_spectral(grams.delta_a).value.real - g_val) <= 1e-10
        assert abs(det_direct(grams.delta_b.matrix).value.real - g_val) <= 1e-10
    for _ in range(500):
        da, db = int(rng.integers(1, 9)), int(rng.integers(1, 13))
        psi = PureBipartiteState.from_coeffs(random_pure_coeffs(rng, da, db))
        moved = apply_local_unitaries(psi, random_unitary(rng, da), random_unitary(rng, db))
        assert abs(gramian_volume(moved) - gramian_volume(psi)) <= 1e-10
        assert abs(log_gramian(moved) - log_gramian(psi)) <= 1e-10


@pytest.mark.criterion(9, "direct-sum and product determinant identities")
def test_criterion_09_det_identities():
    rng = rng_from(9)
    for _ in range(200):
        da, db = int(rng.integers(1, 9)), int(rng.integers(1, 9))
        a, b = random_psd(rng, da), random_psd(rng, db)
        assert det_direct_sum(a, b) == pytest.approx(
            det_direct(a).value.real * det_direct(b).value.real, rel=1e-9)
        c = random_psd(rng, da)
        lhs = det_direct(a).value * det_direct(c).value
        rhs = np.linalg.det((np.eye(da) + a) @ (np.eye(da) + c))
        assert lhs == pytest.approx(rhs, rel=1e-9)


@pytest.mark.criterion(10, "realignment: Bell sum 2, separable mixtures <= 1")
def test_criterion_10_realignment():
    total, verdict = realignment_criterion(bell_density(), (2, 2))
    assert abs(total - 2.0) <= 1e-9
    assert verdict.value == "entanglement_detected"
    rng = rng_from(10)
    for _ in range(300):
        da, db = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        q = random_separable(rng, da, db, int(rng.integers(1, 21)))
        assert realignment_criterion(q, (da, db))[0] <= 1 + 1e-10


@pytest.mark.criterion(11, "log-map bounds, Frechet derivative, monotonicity and concavity")
def test_criterion_11_log_map():
    rng = rng_from(11)
    for _ in range(500):
        q = make_density(random_density(rng, int(rng.integers(1, 11))))
        log_q = renorm_log(q)
        assert trace_norm(log_q) <= trace_norm(q.matrix) + 1e-12
        assert np.trace(log_q).real <= 1 + 1e-12
    for _ in range(100):
        dim = int(rng.integers(1, 7))
        q0, q1 = random_density(rng, dim), random_psd(rng, dim)
        h = 1e-6
        fd = (renorm_log(q0 + h * q1) - renorm_log(q0)) / h
        assert trace_norm(fd - frechet_derivative_log(q0, q1)) <= 1e-4
    monotone = run_claim("appC-operator-monotone", trials=500, seed=11, dim=8)
    concave = run_claim("appC-operator-concave", trials=500, seed=11, dim=8)
    assert monotone.trials == 500 and monotone.violations == 0
    assert monotone.worst_margin >= -1e-9
    assert concave.violations == 0 and concave.worst_margin >= -1e-9


@pytest.mark.criterion(12, "documented counterexamples reproduced via verify, exit 0, < 1 s")
def test_criterion_12_counterexamples(capsys):
    import json

    start = time.perf_counter()
    assert main(["verify", "thm38-det-contraction"]) == 0
    elapsed = time.perf_counter() - start
    data = json.loads(capsys.readouterr().out)
    assert elapsed < 1.0
    assert data["details"]["status"] == data["details"]["expected"] == "documented-counterexample"
    w = data["witness"]
    assert w["det_before"] == pytest.approx(2.0) and w["det_after"] == pytest.approx(2.25)
    assert np.array_equal(np.array(w["state"]["entries"]), [[1, 0], [0, 0], [0, 0], [0, 0]])

    start = time.perf_counter()
    assert main(["verify", "fen-partial-trace"]) == 0
    elapsed = time.perf_counter() - start
    data = json.loads(capsys.readouterr().out)
    assert elapsed < 1.0
    assert data["details"]["status"] == "documented-counterexample"
    w = data["witness"]
    assert w["fen_full"] == pytest.approx(1.1157, abs=1e-4)
    assert w["fen_reduced"] == pytest.approx(1.2164, abs=1e-4)
    assert w["fen_full"] < w["fen_reduced"]


@pytest.mark.criterion(13, "FEN additivity over direct sums of scaled blocks")
def test_criterion_13_block_additivity():
    rng = rng_from(13)
    for _ in range(200):
        k = int(rng.integers(1, 6))
        weights = rng.dirichlet(np.ones(k))
        blocks = [(w, random_density(rng, int(rng.integers(1, 6)))) for w in weights]
        report = fen_block_additivity(blocks)
        assert abs(report.details["lhs"] - report.details["rhs"]) <= 1e-10
