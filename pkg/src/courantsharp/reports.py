"""Serializable result records shared by the 2D and nD bound chains and the CLI."""
from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

ROBIN_NOTE = (
    "applies to Robin eigenvalues with any non-negative Lipschitz beta "
    "(substitute N^beta for N^N and mu_k(Omega, beta) for mu_k(Omega))"
)


class Method(enum.Enum):
    PROP_MU_BOUND = "PropMuBound"
    L1 = "L1"
    L2 = "L2"
    NC_MU2 = "NCmu2"
    NOEVAL_C = "NoevalC"
    NODAL_ONLY = "NodalOnly"
    REMAINDER_ONLY = "RemainderOnly"
    ND_GENERAL = "NdGeneral"
    ND_M1 = "NdM1"
    ND_M2 = "NdM2"
    ND_SIMPLE = "NdSimple"


class BelowThresholdError(ValueError):
    """mu is below the validity threshold of the requested estimate."""

    def __init__(self, message: str, threshold: float):
        super().__init__(f"{message} (mu below validity threshold {threshold:.6g})")
        self.threshold = threshold


@dataclass
class BoundReport:
    method: Method
    value: float
    branches: list  # [(label, value), ...]
    thresholds: dict
    inputs: dict
    extras: dict = field(default_factory=dict)
    n: int = 2
    applies_to_robin: bool = True

    def __post_init__(self):
        self.branches = [(str(k), float(v)) for k, v in self.branches]
        top = max(v for _, v in self.branches)
        if self.value != top:
            raise ValueError("report value must equal the largest branch")

    @property
    def dominant(self) -> str:
        return max(self.branches, key=lambda kv: kv[1])[0]

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "n": self.n,
            "value": self.value,
            "dominant": self.dominant,
            "branches": [{"label": k, "value": v} for k, v in self.branches],
            "thresholds": self.thresholds,
            "inputs": self.inputs,
            "extras": self.extras,
            "applies_to_robin": self.applies_to_robin,
            "robin_note": ROBIN_NOTE,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(
            method=Method(d["method"]),
            value=d["value"],
            branches=[(b["label"], b["value"]) for b in d["branches"]],
            thresholds=d["thresholds"],
            inputs=d["inputs"],
            extras=d.get("extras", {}),
            n=d.get("n", 2),
            applies_to_robin=d.get("applies_to_robin", True),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


@dataclass
class RunReport:
    """Everything one CLI invocation produced.

    ``wall_time`` is kept out of the default JSON so that identical inputs give
    byte-identical output.
    """

    command: list
    inputs_digest: str
    artifacts: list
    checks: list = field(default_factory=list)  # [{"check", "reference", "computed", "tolerance", "passed"}]
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "command": list(self.command),
            "inputs_digest": self.inputs_digest,
            "artifacts": self.artifacts,
            "checks": self.checks,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        return cls(d["command"], d["inputs_digest"], d["artifacts"], d.get("checks", []),
                   d.get("wall_time"))
