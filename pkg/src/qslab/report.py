"""Machine-readable verification reports.

A report is a JSON object {"meta": ..., "records": [...], "timing": ...}
with a stable key order.  Everything inside ``meta`` and ``records`` is
a pure function of the configuration and the seed, so two runs with the
same inputs produce byte-identical content there; wall-clock data
(timestamp, per-check durations) lives only in the ``timing`` section,
which is excluded from the content digest.

Randomness is drawn from the counter-based Philox generator keyed by
(seed, sha256(check id)), so every check owns an independent stream and
the report does not depend on execution order or thread count.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "SuiteConfig",
    "CheckRecord",
    "check_rng",
    "canonical_json",
    "build_report",
    "report_content_bytes",
    "write_report",
]

MAX_DIMENSION = 32
MAX_DEGREE = 64


@dataclass(frozen=True)
class SuiteConfig:
    """Configuration of a verification run; the seed fixes every random stream."""

    suite: str = "all"
    n: int = 8
    degree: int = 24
    alphas: tuple[float, ...] = (0.0, 1.0)
    ps: tuple[float, ...] = (1.0, 2.0, 3.0)
    seed: int = 0
    quad: tuple[int, int] = (200, 256)
    tol_scale: float = 1.0
    out: str | None = None

    def __post_init__(self):
        if not (1 <= self.n <= MAX_DIMENSION):
            raise ValueError(f"dimension n must lie in [1, {MAX_DIMENSION}]")
        if not (0 <= self.degree <= MAX_DEGREE):
            raise ValueError(f"truncation degree must lie in [0, {MAX_DEGREE}]")
        if any(a <= -1 for a in self.alphas):
            raise ValueError("weight exponents must satisfy alpha > -1")
        if any(p <= 0 for p in self.ps):
            raise ValueError("summability exponents must be positive")
        if self.tol_scale <= 0:
            raise ValueError("tolerance scale must be positive")
        if len(self.quad) != 2 or self.quad[0] < 4 or self.quad[1] < 8:
            raise ValueError("quadrature resolution RxA too small")

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "degree": self.degree,
            "alphas": list(self.alphas),
            "ps": list(self.ps),
            "seed": self.seed,
            "quad": list(self.quad),
            "tol_scale": self.tol_scale,
        }


@dataclass
class CheckRecord:
    """One executed check: identity of the law tested, measurements, verdict."""

    check_id: str
    law: str
    inputs_digest: str
    measured: dict
    bound: float | None
    passed: bool
    wall_ms: float = field(default=0.0, compare=False)

    def as_dict(self) -> dict:
        # wall time is serialized separately in the timing section
        return {
            "check_id": self.check_id,
            "law": self.law,
            "inputs_digest": self.inputs_digest,
            "measured": _jsonable(self.measured),
            "bound": self.bound,
            "passed": bool(self.passed),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"value of type {type(obj)!r} is not reportable")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def inputs_digest(config: SuiteConfig, check_id: str) -> str:
    payload = canonical_json({"config": config.as_dict(), "check": check_id})
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def check_rng(seed: int, check_id: str) -> np.random.Generator:
    """Philox stream owned by one check; independent of execution order."""
    tag = int.from_bytes(hashlib.sha256(check_id.encode()).digest()[:8], "big")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, tag])))


def build_report(config: SuiteConfig, records: list[CheckRecord], timestamp: str) -> dict:
    records = sorted(records, key=lambda r: r.check_id)
    body = {
        "meta": {
            "tool": "qslab",
            "version": "0.1.0",
            "config": config.as_dict(),
            "num_checks": len(records),
            "num_failed": sum(0 if r.passed else 1 for r in records),
        },
        "records": [r.as_dict() for r in records],
    }
    digest = hashlib.sha256(canonical_json(body).encode()).hexdigest()
    body["meta"]["content_digest"] = digest
    body["timing"] = {
        "timestamp": timestamp,
        "total_wall_ms": round(sum(r.wall_ms for r in records), 3),
        "per_check": {r.check_id: round(r.wall_ms, 3) for r in records},
    }
    return body


def report_content_bytes(report: dict) -> bytes:
    """Serialized report with the timing section stripped (determinism comparisons)."""
    trimmed = {k: v for k, v in report.items() if k != "timing"}
    return json.dumps(trimmed, indent=1, sort_keys=True, allow_nan=False).encode()


def write_report(path: str | Path, report: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=1, sort_keys=True, allow_nan=False) + "\n")
