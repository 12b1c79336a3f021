"""Parameter sweeps emitted as CSV (``parameter,value,certified_error``)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bipartite import PureBipartiteState, gramian_volume
from .entropy import fen_uniform
from .errors import UnknownExperiment
from .fredholm import det_plemelj

CSV_HEADER = "parameter,value,certified_error"


@dataclass(frozen=True)
class ExperimentRow:
    parameter: float
    value: float
    certified_error: float

    def __post_init__(self):
        if not self.certified_error >= 0:
            raise ValueError("certified_error must be non-negative")


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def to_csv(rows: list[ExperimentRow]) -> str:
    lines = [CSV_HEADER]
    lines += [f"{_fmt(r.parameter)},{_fmt(r.value)},{_fmt(r.certified_error)}" for r in rows]
    return "\n".join(lines) + "\n"


def log_spaced(max_n: int, points_per_decade: int = 10) -> list[int]:
    count = int(round(math.log10(max_n) * points_per_decade)) + 1
    grid = np.unique(np.round(np.logspace(0, math.log10(max_n), max(count, 2))).astype(np.int64))
    return [int(n) for n in grid]


def fen_uniform_limit(max_n: int = 10 ** 6, points_per_decade: int = 10) -> list[ExperimentRow]:
    """FEN+ of ``(1/n, ..., 1/n)`` in closed form; decreases to 1."""
    return [ExperimentRow(n, fen_uniform(n), 0.0) for n in log_spaced(max_n, points_per_decade)]


def gramian_dim_sweep(max_dim: int = 64) -> list[ExperimentRow]:
    """Gramian volume of the maximally entangled ``d x d`` state, ``(1 + 1/d)^d -> e``."""
    rows = []
    for d in range(1, max_dim + 1):
        psi = PureBipartiteState.from_coeffs(np.eye(d) / math.sqrt(d))
        rows.append(ExperimentRow(d, gramian_volume(psi), 0.0))
    return rows


def plemelj_convergence(max_order: int = 60, rho: float = 0.9, dim: int = 8) -> list[ExperimentRow]:
    """Plemelj partial sums for a geometric spectrum with top eigenvalue ``rho``.

    The remainder of the log series after ``N`` terms is at most
    ``||a||_1 rho^N / ((N + 1)(1 - rho))``, which turns into the certified
    bound ``|det| * expm1(remainder)`` on the value.
    """
    lam = rho ** np.arange(1, dim + 1)
    a = np.diag(lam)
    norm1 = math.fsum(lam)
    rows = []
    for order in range(1, max_order + 1):
        res = det_plemelj(a, 1.0, order)
        used = res.truncation_order
        remainder = norm1 * rho ** used / ((used + 1) * (1 - rho))
        rows.append(ExperimentRow(order, res.value.real,
                                  abs(res.value) * math.expm1(remainder)))
    return rows


EXPERIMENTS = {
    "fen-uniform-limit": fen_uniform_limit,
    "gramian-dim-sweep": gramian_dim_sweep,
    "plemelj-convergence": plemelj_convergence,
}


def run_experiment(name: str, **params) -> list[ExperimentRow]:
    try:
        fn = EXPERIMENTS[name]
    except KeyError:
        raise UnknownExperiment(
            f"unknown experiment {name!r}; known: {', '.join(EXPERIMENTS)}") from None
    return fn(**params)
