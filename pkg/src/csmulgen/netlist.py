"""Gate-level netlist intermediate representation.

Flat single-bit signals and five primitive kinds (two-input AND, half
adder, full adder, D flip-flop, constant-zero driver).  Every other
module either builds one of these netlists or consumes one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Primitive kinds.
AND2 = "and2"
HALF_ADDER = "ha"
FULL_ADDER = "fa"
DFF = "dff"
CONST0 = "const0"

# kind -> (input arity, output arity)
ARITY = {
    AND2: (2, 1),
    HALF_ADDER: (2, 2),
    FULL_ADDER: (3, 2),
    DFF: (1, 1),
    CONST0: (0, 1),
}

# Signal kinds.
KIND_INPUT = "input_port_bit"
KIND_INTERNAL = "internal"
KIND_CLOCK = "clock"

# Gate-unit weight of each combinational primitive: a full adder is two
# gate levels deep, everything else is one.
DEPTH_WEIGHT = {AND2: 1, HALF_ADDER: 1, FULL_ADDER: 2}


class NetlistError(Exception):
    """Structural problem that prevents an operation from running."""


class UnbalancedPathError(NetlistError):
    """Paths to one output bit pass through differing register counts."""


@dataclass(frozen=True, slots=True)
class SignalRef:
    """Identity of a single-bit wire."""

    id: int
    kind: str


@dataclass(slots=True)
class Primitive:
    """One gate instance."""

    kind: str
    inputs: list
    outputs: list

    def check_arity(self):
        n_in, n_out = ARITY[self.kind]
        return len(self.inputs) == n_in and len(self.outputs) == n_out


@dataclass(slots=True)
class Netlist:
    """A circuit: ports, signals, primitives, optional clock.

    Netlists are treated as immutable once a generator returns them;
    the mutating helpers below are for construction only.
    """

    width_a: int
    width_b: int
    input_a: list = field(default_factory=list)
    input_b: list = field(default_factory=list)
    output_p: list = field(default_factory=list)
    clock: SignalRef | None = None
    primitives: list = field(default_factory=list)
    pipelined: bool = False
    signals: list = field(default_factory=list)
    # Signal ids declared intentionally unconnected (the IR analogue of
    # mapping an unused output to `open`); excluded from unread checks.
    terminated: set = field(default_factory=set)

    @classmethod
    def create(cls, width_a, width_b):
        """New netlist with input port bits allocated, nothing else."""
        nl = cls(width_a=width_a, width_b=width_b)
        nl.input_a = [nl.new_signal(KIND_INPUT) for _ in range(width_a)]
        nl.input_b = [nl.new_signal(KIND_INPUT) for _ in range(width_b)]
        return nl

    def new_signal(self, kind=KIND_INTERNAL):
        sig = SignalRef(id=len(self.signals), kind=kind)
        self.signals.append(sig)
        return sig

    def add_clock(self):
        if self.clock is None:
            self.clock = self.new_signal(KIND_CLOCK)
        return self.clock

    def add_primitive(self, kind, inputs):
        """Append a primitive, allocating its output signals; returns them."""
        n_in, n_out = ARITY[kind]
        if len(inputs) != n_in:
            raise NetlistError(f"{kind} expects {n_in} inputs, got {len(inputs)}")
        outputs = [self.new_signal() for _ in range(n_out)]
        self.primitives.append(Primitive(kind=kind, inputs=list(inputs), outputs=outputs))
        return outputs

    # -- structural queries -------------------------------------------------

    def drivers(self):
        """Map signal id -> list of producing primitives (ports excluded)."""
        by_sig = {}
        for prim in self.primitives:
            for out in prim.outputs:
                by_sig.setdefault(out.id, []).append(prim)
        return by_sig

    def readers(self):
        """Map signal id -> list of consuming primitives."""
        by_sig = {}
        for prim in self.primitives:
            for inp in prim.inputs:
                by_sig.setdefault(inp.id, []).append(prim)
        return by_sig


@dataclass(frozen=True, slots=True)
class Finding:
    severity: str  # "error" | "warning"
    code: str
    message: str


@dataclass(slots=True)
class ValidationReport:
    findings: list = field(default_factory=list)

    @property
    def errors(self):
        return [f for f in self.findings if f.severity == "error"]

    @property
    def warnings(self):
        return [f for f in self.findings if f.severity == "warning"]

    def is_valid(self):
        return not self.errors

    def is_empty(self):
        return not self.findings


def validate(nl: Netlist) -> ValidationReport:
    """Run every structural check; all problems become report entries.

    Finding order is deterministic: checks run in a fixed sequence and
    each check walks primitives/signals in id order.
    """
    rep = ValidationReport()
    err = lambda code, msg: rep.findings.append(Finding("error", code, msg))
    warn = lambda code, msg: rep.findings.append(Finding("warning", code, msg))

    for idx, prim in enumerate(nl.primitives):
        if not prim.check_arity():
            err("arity-mismatch",
                f"primitive {idx} ({prim.kind}) has {len(prim.inputs)} inputs "
                f"and {len(prim.outputs)} outputs")
        for out in prim.outputs:
            if any(out.id == inp.id for inp in prim.inputs):
                err("self-loop", f"primitive {idx} ({prim.kind}) output s{out.id} "
                                 "is also one of its inputs")

    drivers = nl.drivers()
    port_ids = {s.id for s in nl.input_a} | {s.id for s in nl.input_b}
    if nl.clock is not None:
        port_ids.add(nl.clock.id)

    for sig in nl.signals:
        driving = drivers.get(sig.id, [])
        if sig.id in port_ids:
            if driving:
                err("multiple-drivers", f"port bit s{sig.id} is driven by a primitive")
        elif len(driving) > 1:
            err("multiple-drivers", f"signal s{sig.id} has {len(driving)} drivers")

    def driven(sig):
        return sig.id in port_ids or bool(drivers.get(sig.id))

    for idx, prim in enumerate(nl.primitives):
        for pos, inp in enumerate(prim.inputs):
            if not driven(inp):
                err("undriven-input",
                    f"primitive {idx} ({prim.kind}) input {pos} (s{inp.id}) has no driver")

    for j, bit in enumerate(nl.output_p):
        if not driven(bit):
            err("undriven-output", f"output bit {j} (s{bit.id}) has no driver")

    readers = nl.readers()
    output_ids = {s.id for s in nl.output_p}
    for sig in nl.signals:
        if sig.kind != KIND_INTERNAL:
            continue
        read = sig.id in output_ids or sig.id in readers
        if sig.id in nl.terminated:
            if read:
                err("terminated-but-read",
                    f"signal s{sig.id} is declared terminated but has readers")
            continue
        if not read and drivers.get(sig.id):
            warn("unread-signal", f"internal signal s{sig.id} drives nothing")

    if _has_combinational_cycle(nl):
        err("combinational-cycle", "combinational primitives form a cycle")

    dff_count = sum(1 for p in nl.primitives if p.kind == DFF)
    if nl.pipelined != (dff_count > 0) or nl.pipelined != (nl.clock is not None):
        err("clock-consistency",
            f"pipelined={nl.pipelined} but dffs={dff_count}, "
            f"clock={'present' if nl.clock is not None else 'absent'}")

    if len(nl.output_p) != nl.width_a + nl.width_b:
        err("output-width",
            f"output has {len(nl.output_p)} bits, expected {nl.width_a + nl.width_b}")

    return rep


def topological_order(nl: Netlist):
    """Combinational primitives in evaluation order; DFFs excluded.

    Raises NetlistError if the combinational graph has a cycle.
    """
    comb = [p for p in nl.primitives if p.kind != DFF]
    produced_by = {}
    for prim in comb:
        for out in prim.outputs:
            produced_by[out.id] = prim

    indeg = {}
    consumers = {}
    for prim in comb:
        deps = 0
        for inp in prim.inputs:
            src = produced_by.get(inp.id)
            if src is not None:
                deps += 1
                consumers.setdefault(id(src), []).append(prim)
        indeg[id(prim)] = deps

    ready = [p for p in comb if indeg[id(p)] == 0]
    order = []
    while ready:
        prim = ready.pop()
        order.append(prim)
        for nxt in consumers.get(id(prim), []):
            indeg[id(nxt)] -= 1
            if indeg[id(nxt)] == 0:
                ready.append(nxt)
    if len(order) != len(comb):
        raise NetlistError("combinational cycle detected")
    return order


def levelize(nl: Netlist):
    """Combinational depth of every signal, in gate units.

    Input bits, constants and DFF outputs sit at depth 0.  AND gates and
    half adders add one unit, full adders two.  DFF inputs terminate a
    combinational region.
    """
    depth = {}
    for sig in nl.input_a + nl.input_b:
        depth[sig.id] = 0
    if nl.clock is not None:
        depth[nl.clock.id] = 0
    for prim in nl.primitives:
        if prim.kind in (DFF, CONST0):
            for out in prim.outputs:
                depth[out.id] = 0

    for prim in topological_order(nl):
        if prim.kind == CONST0:
            continue
        d = DEPTH_WEIGHT[prim.kind] + max(depth[inp.id] for inp in prim.inputs)
        for out in prim.outputs:
            depth[out.id] = d

    return {sig: depth[sig.id] for sig in nl.signals if sig.id in depth}


def max_stage_depth(nl: Netlist):
    """Largest combinational depth reaching any DFF input or output bit."""
    depth = levelize(nl)
    by_id = {sig.id: d for sig, d in depth.items()}
    worst = 0
    for prim in nl.primitives:
        if prim.kind == DFF:
            worst = max(worst, by_id[prim.inputs[0].id])
    for bit in nl.output_p:
        worst = max(worst, by_id.get(bit.id, 0))
    return worst


def _has_combinational_cycle(nl: Netlist) -> bool:
    try:
        topological_order(nl)
    except NetlistError:
        return True
    return False


def _register_depth_sets(nl: Netlist):
    """Map signal id -> set of register counts over all source-to-signal paths."""
    produced_by = {}
    for prim in nl.primitives:
        for out in prim.outputs:
            produced_by[out.id] = prim

    indeg = {}
    consumers = {}
    for prim in nl.primitives:
        deps = 0
        for inp in prim.inputs:
            src = produced_by.get(inp.id)
            if src is not None:
                deps += 1
                consumers.setdefault(id(src), []).append(prim)
        indeg[id(prim)] = deps

    depths = {}
    for sig in nl.input_a + nl.input_b:
        depths[sig.id] = frozenset([0])
    if nl.clock is not None:
        depths[nl.clock.id] = frozenset([0])

    ready = [p for p in nl.primitives if indeg[id(p)] == 0]
    seen = 0
    while ready:
        prim = ready.pop()
        seen += 1
        if prim.kind == CONST0:
            vals = frozenset([0])
        else:
            vals = frozenset().union(*(depths[inp.id] for inp in prim.inputs))
            if prim.kind == DFF:
                vals = frozenset(d + 1 for d in vals)
        for out in prim.outputs:
            depths[out.id] = vals
        for nxt in consumers.get(id(prim), []):
            indeg[id(nxt)] -= 1
            if indeg[id(nxt)] == 0:
                ready.append(nxt)
    if seen != len(nl.primitives):
        raise NetlistError("cycle through registers; cannot compute register depth")
    return depths


def register_depth(nl: Netlist, bit: SignalRef) -> int:
    """Number of DFF stages on every source-to-bit path for one output bit.

    Non-pipelined netlists report 0.  Raises UnbalancedPathError when two
    paths to the bit disagree.
    """
    if not nl.pipelined:
        return 0
    depths = _register_depth_sets(nl)
    vals = sorted(depths.get(bit.id, frozenset([0])))
    if len(vals) > 1:
        raise UnbalancedPathError(
            f"output bit s{bit.id} mixes paths with {vals[0]} and {vals[-1]} registers")
    return vals[0]
