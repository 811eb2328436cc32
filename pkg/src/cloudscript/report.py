"""Simulation report and its CSV/JSON serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

CSV_COLUMNS = ["cloudlet_id", "status", "datacenter_id", "vm_id", "exec_time", "start_time", "finish_time"]
SAMPLE_COLUMNS = ["time", "datacenter_id", "vm_id", "running_cloudlets"]


@dataclass
class CloudletRow:
    cloudlet_id: int
    status: str
    datacenter_id: int | None
    vm_id: int | None
    exec_time: float | None
    start_time: float | None
    finish_time: float | None


@dataclass
class MonitoringSample:
    time: float
    datacenter_id: int
    vm_id: int
    running_cloudlets: int


@dataclass
class SimulationReport:
    cloudlets: list[CloudletRow]
    final_clock: float
    overhead_ms: int
    samples: list[MonitoringSample] = field(default_factory=list)

    @classmethod
    def from_cloudlets(cls, cloudlets, final_clock, overhead_ms, samples=()):
        rows = [
            CloudletRow(
                cl.id,
                cl.status.value,
                cl.datacenter_id,
                cl.vm_id,
                cl.exec_time,
                cl.start_time if cl.finish_time is not None else None,
                cl.finish_time,
            )
            for cl in sorted(cloudlets, key=lambda c: c.id)
        ]
        return cls(rows, final_clock, overhead_ms, list(samples))

    def row(self, cloudlet_id: int) -> CloudletRow:
        return next(r for r in self.cloudlets if r.cloudlet_id == cloudlet_id)

    def without_timing(self) -> "SimulationReport":
        """Copy with the wall-clock metric zeroed, for determinism comparisons."""
        return SimulationReport(self.cloudlets, self.final_clock, 0, self.samples)


def _fmt(t: float | None) -> str:
    return "" if t is None else f"{t:.6f}"


def _opt(v) -> str:
    return "" if v is None else str(v)


def render_csv(report: SimulationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.cloudlets:
        w.writerow([r.cloudlet_id, r.status, _opt(r.datacenter_id), _opt(r.vm_id),
                    _fmt(r.exec_time), _fmt(r.start_time), _fmt(r.finish_time)])
    return buf.getvalue()


def render_json(report: SimulationReport) -> str:
    rows = [
        {
            "cloudlet_id": r.cloudlet_id,
            "status": r.status,
            "datacenter_id": r.datacenter_id,
            "vm_id": r.vm_id,
            "exec_time": None if r.exec_time is None else round(r.exec_time, 6),
            "start_time": None if r.start_time is None else round(r.start_time, 6),
            "finish_time": None if r.finish_time is None else round(r.finish_time, 6),
        }
        for r in report.cloudlets
    ]
    return json.dumps(rows, indent=2) + "\n"


def render_samples_csv(report: SimulationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SAMPLE_COLUMNS)
    for s in report.samples:
        w.writerow([_fmt(s.time), s.datacenter_id, s.vm_id, s.running_cloudlets])
    return buf.getvalue()


def write_report(report: SimulationReport, fmt: str, path: str | Path) -> None:
    if fmt == "csv":
        text = render_csv(report)
    elif fmt == "json":
        text = render_json(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
