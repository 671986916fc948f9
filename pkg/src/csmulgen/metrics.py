"""Per-design statistics: component counts, reduction depth, latency.

Rendered as a versioned JSON document with a stable key order so two
runs of the same configuration are machine-diffable (only the
generation_time_ms field varies).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .mulgen import BuildAnnotations, LatencyInfo, compute_latency
from .netlist import AND2, CONST0, DFF, FULL_ADDER, HALF_ADDER, KIND_CLOCK, Netlist

SCHEMA_VERSION = 1


@dataclass(frozen=True, slots=True)
class MetricsReport:
    width_a: int
    width_b: int
    pipelined: bool
    signals: int
    and_gates: int
    full_adders: int
    half_adders: int
    adders: int
    dffs: int
    reduction_stages: int
    latency: LatencyInfo
    generation_time_ms: float | None = None


def compute_metrics(nl: Netlist, ann: BuildAnnotations,
                    generation_time_ms: float | None = None) -> MetricsReport:
    """Exact counts from a linear scan of the primitive list.

    The signals figure counts every port bit and internal wire; the
    clock is excluded.
    """
    counts = {AND2: 0, HALF_ADDER: 0, FULL_ADDER: 0, DFF: 0, CONST0: 0}
    for prim in nl.primitives:
        counts[prim.kind] += 1
    signals = sum(1 for s in nl.signals if s.kind != KIND_CLOCK)
    return MetricsReport(
        width_a=nl.width_a,
        width_b=nl.width_b,
        pipelined=nl.pipelined,
        signals=signals,
        and_gates=counts[AND2],
        full_adders=counts[FULL_ADDER],
        half_adders=counts[HALF_ADDER],
        adders=counts[FULL_ADDER] + counts[HALF_ADDER],
        dffs=counts[DFF],
        reduction_stages=ann.stage_count,
        latency=compute_latency(nl),
        generation_time_ms=generation_time_ms,
    )


def render_json(report: MetricsReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "width_a": report.width_a,
        "width_b": report.width_b,
        "pipelined": report.pipelined,
        "signals": report.signals,
        "and_gates": report.and_gates,
        "full_adders": report.full_adders,
        "half_adders": report.half_adders,
        "adders": report.adders,
        "dffs": report.dffs,
        "reduction_stages": report.reduction_stages,
        "latency": {
            "pipelined": report.latency.pipelined,
            "cycles": report.latency.cycles,
            "gate_units": report.latency.gate_units,
        },
        "generation_time_ms": report.generation_time_ms,
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_json(text: str) -> MetricsReport:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported metrics schema: {doc.get('schema_version')}")
    lat = doc["latency"]
    return MetricsReport(
        width_a=doc["width_a"],
        width_b=doc["width_b"],
        pipelined=doc["pipelined"],
        signals=doc["signals"],
        and_gates=doc["and_gates"],
        full_adders=doc["full_adders"],
        half_adders=doc["half_adders"],
        adders=doc["adders"],
        dffs=doc["dffs"],
        reduction_stages=doc["reduction_stages"],
        latency=LatencyInfo(pipelined=lat["pipelined"], cycles=lat["cycles"],
                            gate_units=lat["gate_units"]),
        generation_time_ms=doc["generation_time_ms"],
    )
