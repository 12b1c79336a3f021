"""JSON matrix files read and written by the command line tool.

Layout::

    {"kind": "matrix" | "density" | "pure_bipartite",
     "dim_rows": R, "dim_cols": C,
     "entries": [[re, im], ...],          # row-major, R*C pairs
     "dims": [dA, dB]}                    # pure_bipartite only

A ``pure_bipartite`` file holds either the ``dA x dB`` coefficient matrix or
the flattened ``dA*dB`` vector (as one row or one column).
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bipartite import PureBipartiteState
from .linalg import make_density
from .reports import decode_matrix, encode_matrix

KINDS = ("matrix", "density", "pure_bipartite")


@dataclass
class MatrixFile:
    kind: str
    matrix: np.ndarray
    dims: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, **encode_matrix(self.matrix)}
        if self.dims is not None:
            out["dims"] = list(self.dims)
        return out

    def density(self):
        return make_density(self.matrix)

    def pure_state(self) -> PureBipartiteState:
        da, db = self.dims
        return PureBipartiteState.from_coeffs(self.matrix.reshape(da, db))


def parse_matrix_file(obj: dict) -> MatrixFile:
    kind = obj.get("kind", "matrix")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    m = decode_matrix(obj)
    dims = None
    if kind == "pure_bipartite":
        if "dims" in obj:
            dims = (int(obj["dims"][0]), int(obj["dims"][1]))
        else:
            dims = m.shape
        if m.size != dims[0] * dims[1]:
            raise ValueError(f"{m.size} entries do not fit dims {dims}")
    mf = MatrixFile(kind, m, dims)
    if kind == "density":
        mf.density()
    elif kind == "pure_bipartite":
        mf.pure_state()
    return mf


def load_matrix_file(path) -> MatrixFile:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_file(json.load(fh))


def save_matrix_file(path, mf: MatrixFile) -> None:
    write_atomic(path, json.dumps(mf.to_dict(), indent=2) + "\n")


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
