"""Command line interface.

Exit codes: 0 success; 1 ``majorize`` relation fails; 2 invalid input or
route/domain mismatch; 3 determinant routes disagree; 4 ``verify`` outcome
differs from the registry's expected status.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import claims, experiments
from .bipartite import (
    fen_pure,
    gram_operators,
    gramian_volume,
    log_gramian,
    schmidt_decompose,
)
from .entropy import fen
from .errors import FredentError
from .fredholm import Route, det_direct, fredholm_det
from .majorization import (
    additive_majorizes,
    multiplicative_majorizes,
    state_m_majorizes,
)
from .matrixfile import MatrixFile, load_matrix_file, write_atomic

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INVALID = 2
EXIT_ROUTES_DISAGREE = 3
EXIT_UNEXPECTED = 4

ROUTE_RTOL = 1e-8
SPECTRUM_HEAD = 8


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _emit(obj, out_path=None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    sys.stdout.write(text)
    if out_path:
        write_atomic(out_path, text)


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _load(path) -> MatrixFile:
    try:
        return load_matrix_file(path)
    except FredentError as exc:
        raise CliError(f"{type(exc).__name__}: {exc}") from exc
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def cmd_fen(args) -> int:
    mf = _load(args.input[0])
    q = mf.pure_state().density() if mf.kind == "pure_bipartite" else mf.density()
    value = fen(q)
    _emit({
        "plus": value.plus,
        "minus": value.minus,
        "tail_bound": value.tail_bound,
        "dim": q.dim,
        "spectrum_head": [float(x) for x in q.spectrum[:SPECTRUM_HEAD]],
    }, args.out)
    return EXIT_OK


def cmd_det(args) -> int:
    mf = _load(args.input[0])
    route = Route(args.route)
    result = fredholm_det(mf.matrix, args.z, route)
    payload = {
        "value": _complex_pair(result.value),
        "route": result.route.value,
        "truncation_order": result.truncation_order,
        "bound": result.bound,
    }
    code = EXIT_OK
    if route is not Route.DIRECT:
        reference = det_direct(mf.matrix, args.z).value
        deviation = abs(result.value - reference) / max(abs(reference), 1e-300)
        payload["direct_check"] = {"value": _complex_pair(reference), "relative_deviation": deviation}
        if deviation > ROUTE_RTOL:
            print(f"route {route.value} disagrees with direct determinant: "
                  f"relative deviation {deviation:.3e}", file=sys.stderr)
            code = EXIT_ROUTES_DISAGREE
    _emit(payload, args.out)
    return code


def cmd_schmidt(args) -> int:
    mf = _load(args.input[0])
    if mf.kind != "pure_bipartite":
        raise CliError("schmidt needs a pure_bipartite input file")
    psi = mf.pure_state()
    tau, _, _ = schmidt_decompose(psi)
    g = gram_operators(psi)
    _emit({
        "dims": list(psi.dims),
        "schmidt": [float(t) for t in tau],
        "schmidt_norm_sq": float(np.sum(tau ** 2)),
        "gramian_volume": gramian_volume(psi),
        "log_gramian": log_gramian(psi),
        "fen": fen_pure(psi),
        "delta_a_spectrum": [float(x) for x in g.delta_a.spectrum],
    }, args.out)
    return EXIT_OK


def _sequence(mf: MatrixFile) -> np.ndarray:
    if mf.kind == "density":
        return np.asarray(mf.density().spectrum, dtype=float)
    if mf.matrix.shape[0] == 1 or mf.matrix.shape[1] == 1:
        return mf.matrix.real.ravel()
    raise CliError("sequence input must be a density file or a single row/column matrix")


def cmd_majorize(args) -> int:
    if len(args.input) != 2:
        raise CliError("majorize needs exactly two --input files (a then b)")
    a, b = _load(args.input[0]), _load(args.input[1])
    if args.mode == "state":
        verdict = state_m_majorizes(a.density(), b.density())
    elif args.mode == "multiplicative":
        verdict = multiplicative_majorizes(_sequence(a), _sequence(b))
    else:
        verdict = additive_majorizes(_sequence(a), _sequence(b))
    _emit({
        "relation": verdict.relation.value,
        "mode": args.mode,
        "holds": verdict.holds,
        "first_violation_index": verdict.first_violation_index,
        "margins": [float(m) for m in verdict.margins],
    }, args.out)
    return EXIT_OK if verdict.holds else EXIT_FAILS


def _default_seed() -> int:
    return int(os.environ.get("FREDENT_SEED", "0"))


def cmd_verify(args) -> int:
    claim = claims.get_claim(args.claim)
    seed = args.seed if args.seed is not None else _default_seed()
    report = claims.run_claim(args.claim, trials=args.trials, seed=seed, dim=args.dim)
    _emit(report.to_dict(), args.out)
    if not claim.outcome_matches(report):
        print(f"claim {claim.claim_id}: expected {claim.expected}, "
              f"got {report.violations} violation(s) in {report.trials} trial(s)",
              file=sys.stderr)
        return EXIT_UNEXPECTED
    return EXIT_OK


def cmd_experiment(args) -> int:
    params = {}
    if args.max_n is not None:
        params["max_n"] = args.max_n
    if args.max_dim is not None:
        params["max_dim"] = args.max_dim
    if args.max_order is not None:
        params["max_order"] = args.max_order
    try:
        rows = experiments.run_experiment(args.name, **params)
    except TypeError as exc:
        raise CliError(f"bad parameter for {args.name}: {exc}") from exc
    text = experiments.to_csv(rows)
    sys.stdout.write(text)
    if args.out:
        write_atomic(args.out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fredent", description="Fredholm determinants and renormalized entropies.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, inputs=True):
        p = sub.add_parser(name, help=help_text)
        if inputs:
            p.add_argument("--input", action="append", required=True, metavar="PATH")
        p.add_argument("--out", metavar="PATH")
        p.set_defaults(func=fn)
        return p

    add("fen", cmd_fen, "renormalized entropy FEN+/- of a state")
    p = add("det", cmd_det, "Fredholm determinant det(I + zA)")
    p.add_argument("--z", type=parse_complex, default=complex(1.0), metavar="RE,IM")
    p.add_argument("--route", choices=[r.value for r in Route], default=Route.SPECTRAL.value)
    add("schmidt", cmd_schmidt, "Schmidt data and gramian volume of a pure bipartite state")
    p = add("majorize", cmd_majorize, "majorization between two inputs (a then b)")
    p.add_argument("--mode", choices=["additive", "multiplicative", "state"], default="additive")
    p = add("verify", cmd_verify, "run a registered claim checker", inputs=False)
    p.add_argument("claim", metavar="CLAIM_ID")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--dim", type=int, default=4)
    p = add("experiment", cmd_experiment, "CSV sweep", inputs=False)
    p.add_argument("name", metavar="NAME", help=", ".join(sorted(experiments.EXPERIMENTS)))
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-dim", type=int)
    p.add_argument("--max-order", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FredentError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
