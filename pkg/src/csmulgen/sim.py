"""Gate-level netlist evaluation and product verification.

Values are plain Python integers used as lane vectors: bit t of a
signal's value is that signal's logic level in test lane t.  A single
evaluation is just the one-lane case.  AND/XOR/majority on big
integers make exhaustive sweeps cheap without any extra machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import json
import random

from .netlist import (
    AND2, CONST0, DFF, FULL_ADDER, HALF_ADDER,
    Netlist, register_depth, topological_order,
)

EXHAUSTIVE_GUARD_BITS = 24


class SimError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class OperandValue:
    """Unsigned operand of a fixed bit width; LSB is bit index 0."""

    value: int
    width: int

    def __post_init__(self):
        if self.value < 0 or self.value >> self.width:
            raise ValueError(f"{self.value} does not fit in {self.width} bits")

    @property
    def bits(self):
        return [(self.value >> i) & 1 for i in range(self.width)]

    def bitstring(self):
        """MSB-first rendering, zero-extended to the full width."""
        return format(self.value, f"0{self.width}b")

    @classmethod
    def from_bits(cls, bits):
        return cls(sum(b << i for i, b in enumerate(bits)), len(bits))


@dataclass(slots=True)
class SimState:
    values: dict = field(default_factory=dict)  # signal id -> lane vector
    dff_state: dict = field(default_factory=dict)  # primitive index -> lane vector
    cycle: int = 0

    def output_value(self, nl: Netlist, lane=0):
        return sum(((self.values[b.id] >> lane) & 1) << j
                   for j, b in enumerate(nl.output_p))


def _apply_inputs(values, nl, a_bits, b_bits):
    for sig, v in zip(nl.input_a, a_bits):
        values[sig.id] = v
    for sig, v in zip(nl.input_b, b_bits):
        values[sig.id] = v


def _settle(nl, order, values):
    for prim in order:
        k = prim.kind
        if k == AND2:
            a, b = (values[s.id] for s in prim.inputs)
            values[prim.outputs[0].id] = a & b
        elif k == FULL_ADDER:
            a, b, c = (values[s.id] for s in prim.inputs)
            values[prim.outputs[0].id] = a ^ b ^ c
            values[prim.outputs[1].id] = (a & b) | (a & c) | (b & c)
        elif k == HALF_ADDER:
            a, b = (values[s.id] for s in prim.inputs)
            values[prim.outputs[0].id] = a ^ b
            values[prim.outputs[1].id] = a & b
        elif k == CONST0:
            values[prim.outputs[0].id] = 0


def _operand_lane_bits(nl, a, b):
    a = a if isinstance(a, OperandValue) else OperandValue(a, nl.width_a)
    b = b if isinstance(b, OperandValue) else OperandValue(b, nl.width_b)
    if a.width != nl.width_a or b.width != nl.width_b:
        raise SimError(f"operand widths {a.width}x{b.width} do not match "
                       f"netlist {nl.width_a}x{nl.width_b}")
    return a.bits, b.bits


def eval_combinational(nl: Netlist, a, b) -> SimState:
    """Settle a non-pipelined netlist on one input pair."""
    if nl.pipelined:
        raise SimError("eval_combinational requires a non-pipelined netlist")
    a_bits, b_bits = _operand_lane_bits(nl, a, b)
    state = SimState()
    _apply_inputs(state.values, nl, a_bits, b_bits)
    _settle(nl, topological_order(nl), state.values)
    return state


def initial_state(nl: Netlist, a, b) -> SimState:
    """Cycle-0 state of a pipelined netlist: registers all zero, then settle."""
    a_bits, b_bits = _operand_lane_bits(nl, a, b)
    state = SimState()
    dffs = [(idx, p) for idx, p in enumerate(nl.primitives) if p.kind == DFF]
    for idx, prim in dffs:
        state.dff_state[idx] = 0
        state.values[prim.outputs[0].id] = 0
    _apply_inputs(state.values, nl, a_bits, b_bits)
    if nl.clock is not None:
        state.values[nl.clock.id] = 0
    _settle(nl, topological_order(nl), state.values)
    return state


def step_cycle(nl: Netlist, state: SimState, a, b) -> SimState:
    """One rising clock edge: registers latch simultaneously, then the
    combinational regions settle with the (possibly new) inputs."""
    if not nl.pipelined:
        raise SimError("step_cycle requires a pipelined netlist")
    a_bits, b_bits = _operand_lane_bits(nl, a, b)
    nxt = SimState(values=dict(state.values), cycle=state.cycle + 1)
    for idx, prim in enumerate(nl.primitives):
        if prim.kind == DFF:
            nxt.dff_state[idx] = state.values[prim.inputs[0].id]
            nxt.values[prim.outputs[0].id] = nxt.dff_state[idx]
    _apply_inputs(nxt.values, nl, a_bits, b_bits)
    _settle(nl, topological_order(nl), nxt.values)
    return nxt


def run_to_output(nl: Netlist, a, b) -> int:
    """Simulated product: settle once if combinational, else hold the
    inputs for the pipeline latency."""
    if not nl.pipelined:
        return eval_combinational(nl, a, b).output_value(nl)
    latency = register_depth(nl, nl.output_p[0])
    state = initial_state(nl, a, b)
    for _ in range(latency):
        state = step_cycle(nl, state, a, b)
    return state.output_value(nl)


@dataclass(slots=True)
class VerificationReport:
    passed: bool
    tested: int
    mode: str
    counterexample: dict | None = None

    def to_text(self):
        if self.passed:
            return f"PASS: {self.tested} {self.mode} vectors, all exact"
        c = self.counterexample
        return (f"FAIL: {c['a']} x {c['b']} expected {c['expected']} "
                f"got {c['got']} ({self.mode}, after {self.tested} vectors)")

    def to_json(self):
        return json.dumps({
            "passed": self.passed,
            "tested": self.tested,
            "mode": self.mode,
            "counterexample": self.counterexample,
        }, sort_keys=True)


def _lane_eval(nl, a_masks, b_masks):
    """Evaluate all lanes at once; returns the values map.

    a_masks[i] holds input bit i of operand a across lanes.  Pipelined
    netlists run with per-lane constant inputs for the full latency.
    """
    values = {}
    for sig, m in zip(nl.input_a, a_masks):
        values[sig.id] = m
    for sig, m in zip(nl.input_b, b_masks):
        values[sig.id] = m
    order = topological_order(nl)
    if not nl.pipelined:
        _settle(nl, order, values)
        return values
    dffs = [(idx, p) for idx, p in enumerate(nl.primitives) if p.kind == DFF]
    if nl.clock is not None:
        values[nl.clock.id] = 0
    state = {idx: 0 for idx, _ in dffs}
    for idx, prim in dffs:
        values[prim.outputs[0].id] = 0
    _settle(nl, order, values)
    latency = register_depth(nl, nl.output_p[0])
    for _ in range(latency):
        for idx, prim in dffs:
            state[idx] = values[prim.inputs[0].id]
        for idx, prim in dffs:
            values[prim.outputs[0].id] = state[idx]
        _settle(nl, order, values)
    return values


def _check_lanes(nl, values, pairs, mode, tested_before=0):
    out_masks = [values[b.id] for b in nl.output_p]
    for lane, (a, b) in enumerate(pairs):
        got = sum(((m >> lane) & 1) << j for j, m in enumerate(out_masks))
        if got != a * b:
            return VerificationReport(
                passed=False, tested=tested_before + lane, mode=mode,
                counterexample={"a": a, "b": b, "expected": a * b, "got": got})
    return None


def verify_exhaustive(nl: Netlist) -> VerificationReport:
    """Check every input pair against the arbitrary-precision product."""
    n, k = nl.width_a, nl.width_b
    if n + k > EXHAUSTIVE_GUARD_BITS:
        raise SimError(f"exhaustive verification capped at {EXHAUSTIVE_GUARD_BITS} "
                       f"total input bits, got {n + k}")
    total = 1 << (n + k)
    chunk = min(total, 1 << 16)
    tested = 0
    for base in range(0, total, chunk):
        a_masks = [_pattern(i, chunk, base) for i in range(n)]
        b_masks = [_pattern(n + i, chunk, base) for i in range(k)]
        values = _lane_eval(nl, a_masks, b_masks)
        pairs = [((base + t) & ((1 << n) - 1), (base + t) >> n) for t in range(chunk)]
        bad = _check_lanes(nl, values, pairs, "exhaustive", tested)
        if bad is not None:
            return bad
        tested += chunk
    return VerificationReport(passed=True, tested=tested, mode="exhaustive")


def _pattern(v, lanes, base):
    """Lane mask of combined-input bit v over the lane window [base, base+lanes)."""
    period = 1 << v
    if period >= lanes:
        return ((1 << lanes) - 1) if (base >> v) & 1 else 0
    p = ((1 << period) - 1) << period  # one full 0-run then 1-run
    width = 2 * period
    while width < lanes:
        p |= p << width
        width *= 2
    return p


def verify_random(nl: Netlist, count: int, seed: int) -> VerificationReport:
    """Check seeded uniform random pairs, exact product equality each."""
    rng = random.Random(seed)
    n, k = nl.width_a, nl.width_b
    pairs = [(rng.getrandbits(n), rng.getrandbits(k)) for _ in range(count)]
    if not pairs:
        return VerificationReport(passed=True, tested=0, mode="random")
    a_masks = [sum(((a >> i) & 1) << t for t, (a, _) in enumerate(pairs))
               for i in range(n)]
    b_masks = [sum(((b >> i) & 1) << t for t, (_, b) in enumerate(pairs))
               for i in range(k)]
    values = _lane_eval(nl, a_masks, b_masks)
    bad = _check_lanes(nl, values, pairs, "random")
    if bad is not None:
        return bad
    return VerificationReport(passed=True, tested=len(pairs), mode="random")
