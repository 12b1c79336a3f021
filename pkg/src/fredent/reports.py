"""Structured claim-checker results and their JSON serialization.

Complex numbers are written as ``[re, im]`` pairs.  Floats go through
``repr`` (shortest round-trip form), so a deserialized witness replays
bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def encode_matrix(m) -> dict:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return {
        "dim_rows": int(arr.shape[0]),
        "dim_cols": int(arr.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in arr.ravel()],
    }


def decode_matrix(obj: dict) -> np.ndarray:
    rows, cols = int(obj["dim_rows"]), int(obj["dim_cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ValueError(
            f"entries has {len(entries)} items, expected {rows}x{cols}={rows * cols}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return flat.reshape(rows, cols)


@dataclass
class ClaimReport:
    """Outcome of a claim checker.

    ``worst_margin`` is the smallest ``rhs - lhs`` seen over all trials (for
    identities, minus the largest deviation), so a negative value beyond the
    checker's tolerance is a violation.
    """

    claim_id: str
    trials: int = 0
    violations: int = 0
    worst_margin: float = float("inf")
    witness: dict | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.violations == 0

    def record(self, margin: float, violated: bool, witness=None) -> None:
        self.trials += 1
        self.worst_margin = min(self.worst_margin, float(margin))
        if violated:
            self.violations += 1
            if self.witness is None:
                self.witness = witness() if callable(witness) else witness

    def merge(self, other: "ClaimReport") -> "ClaimReport":
        if other.claim_id != self.claim_id:
            raise ValueError("cannot merge reports for different claims")
        return ClaimReport(
            claim_id=self.claim_id,
            trials=self.trials + other.trials,
            violations=self.violations + other.violations,
            worst_margin=min(self.worst_margin, other.worst_margin),
            witness=self.witness if self.witness is not None else other.witness,
            details={**other.details, **self.details},
        )

    def to_dict(self) -> dict:
        out = {
            "claim_id": self.claim_id,
            "trials": self.trials,
            "violations": self.violations,
            # no trials yet: inf is not valid JSON
            "worst_margin": self.worst_margin if math.isfinite(self.worst_margin) else None,
            "witness": self.witness,
        }
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, obj: dict) -> "ClaimReport":
        return cls(
            claim_id=obj["claim_id"],
            trials=int(obj["trials"]),
            violations=int(obj["violations"]),
            worst_margin=(float("inf") if obj["worst_margin"] is None
                          else float(obj["worst_margin"])),
            witness=obj.get("witness"),
            details=obj.get("details", {}),
        )
