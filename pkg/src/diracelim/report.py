"""Report records for the verification suite and their JSON/CSV forms.

The JSON document is versioned and fully determined by (scenario, flags,
seed) except for the wall-time entry; `to_json(include_wall_time=False)`
drops it so byte-level comparisons are possible.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class IdentityRecord:
    identity: str
    points: int
    degenerate_points: int
    max_residual: float
    tolerance: float
    passed: bool
    note: str = ""

    def as_dict(self):
        return {
            "identity": self.identity,
            "points": self.points,
            "degenerate_points": self.degenerate_points,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class PointRecord:
    identity: str
    index: int
    point: tuple
    residual: float
    tolerance: float
    passed: bool


@dataclass
class VerificationReport:
    tool: str
    version: str
    scenario: str
    order: int
    points: int
    seed: int
    tolerance: float
    identities: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    overall_pass: bool = False
    wall_time_s: float = 0.0

    def as_dict(self, include_wall_time=True):
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool": self.tool,
            "version": self.version,
            "scenario": self.scenario,
            "order": self.order,
            "points": self.points,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "identities": [r.as_dict() for r in self.identities],
            "diagnostics": self.diagnostics,
            "overall_pass": self.overall_pass,
        }
        if include_wall_time:
            out["wall_time_s"] = self.wall_time_s
        return out

    def to_json(self, include_wall_time=True):
        return json.dumps(self.as_dict(include_wall_time), indent=2, sort_keys=True) + "\n"


def write_csv(path, rows):
    """Per-point residual rows as delimited output."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["identity", "point_index", "t", "x", "y", "z", "residual", "tolerance", "passed"])
        for r in rows:
            w.writerow(
                [r.identity, r.index, *(repr(c) for c in r.point),
                 repr(r.residual), repr(r.tolerance), int(r.passed)]
            )
