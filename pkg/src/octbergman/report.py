"""Verification reports and their JSON / CSV serialisation."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from . import algebra as alg

SCHEMA_VERSION = "1"

CSV_COLUMNS = (
    ["id", "paper_ref"]
    + [f"lhs_{i}" for i in range(8)]
    + [f"rhs_{i}" for i in range(8)]
    + ["abs_err", "rel_err", "tolerance", "mode", "std_error", "pass"]
)


def _oct_list(v) -> list[float]:
    return [float(c) for c in alg.as_array(v)]


@dataclass
class Check:
    """One compared quantity.

    ``mode="rel"`` passes when ``rel_err <= tolerance`` (or ``abs_err <=
    tolerance`` against a zero reference); ``mode="abs"`` compares
    ``abs_err`` directly.
    """

    id: str
    paper_ref: str
    lhs: list[float]
    rhs: list[float]
    abs_err: float
    rel_err: float
    tolerance: float
    mode: Literal["rel", "abs"] = "rel"
    std_error: float | None = None
    passed: bool = False

    @classmethod
    def compare(cls, id, ref, lhs, rhs, tolerance, mode="rel", std_error=None, scale=None) -> "Check":
        lhs_a, rhs_a = alg.as_array(lhs), alg.as_array(rhs)
        abs_err = float(alg.norm(lhs_a - rhs_a))
        denom = float(scale) if scale is not None else float(alg.norm(rhs_a))
        rel_err = abs_err / denom if denom > 0 else (0.0 if abs_err == 0 else float("inf"))
        return cls._finish(id, ref, lhs_a, rhs_a, abs_err, rel_err, tolerance, mode, std_error, denom)

    @classmethod
    def worst(cls, id, ref, lhs, rhs, scale, tolerance) -> "Check":
        """Relative comparison over a batch, reported at the worst row."""
        lhs, rhs = np.atleast_2d(lhs), np.atleast_2d(rhs)
        err = alg.norm(lhs - rhs)
        scale = np.broadcast_to(np.asarray(scale, dtype=np.float64), err.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.where(err == 0, 0.0, err / scale)
        rel = np.where(np.isnan(rel), np.inf, rel)
        i = int(np.argmax(rel))
        return cls._finish(id, ref, lhs[i], rhs[i], float(err[i]), float(rel[i]), tolerance, "rel", None, float(scale[i]))

    @classmethod
    def _finish(cls, id, ref, lhs, rhs, abs_err, rel_err, tolerance, mode, std_error, denom):
        if mode == "abs":
            ok = abs_err <= tolerance
        else:
            ok = rel_err <= tolerance or (denom == 0 and abs_err <= tolerance)
        return cls(
            id, ref, _oct_list(lhs), _oct_list(rhs), abs_err, rel_err, float(tolerance), mode,
            None if std_error is None else float(std_error), bool(ok),
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tolerance": self.tolerance,
            "mode": self.mode,
            "std_error": self.std_error,
            "pass": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(
            d["id"], d["paper_ref"], list(d["lhs"]), list(d["rhs"]), d["abs_err"], d["rel_err"],
            d["tolerance"], d["mode"], d["std_error"], d["pass"],
        )

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        err = self.abs_err if self.mode == "abs" else self.rel_err
        return f"{status} {self.id}: {self.mode}_err={err:.3e} tol={self.tolerance:.3e}"


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check]
    config: dict
    runtime_ms: float | None = None
    version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(d["suite"], [Check.from_dict(c) for c in d["checks"]], d["config"], d["runtime_ms"], d["version"])


def to_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in report.checks:
        w.writerow(
            [c.id, c.paper_ref, *map(repr, c.lhs), *map(repr, c.rhs), repr(c.abs_err), repr(c.rel_err),
             repr(c.tolerance), c.mode, "" if c.std_error is None else repr(c.std_error), int(c.passed)]
        )
    return buf.getvalue()


def emit_report(
    report: VerificationReport,
    format: Literal["json", "csv"] = "json",
    path: str | Path | None = None,
    stream=None,
) -> str:
    """Serialise ``report``; write to ``path`` if given, else to ``stream`` (if given)."""
    if format == "json":
        text = to_json(report)
    elif format == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown report format {format!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
    elif stream is not None:
        stream.write(text)
    return text


def lines(checks: Sequence[Check]) -> str:
    return "\n".join(c.line() for c in checks)
