"""Self-checking randomized VHDL testbench generation.

Seeded random operand pairs with precomputed exact products, a
wait-for-latency stimulus process, and paired assert statements: a
severity-error report naming inputs/expected/got, and the inverted
assert printing a success note.  Every plan is re-verified against an
independent product implementation and against the gate-level
simulator before any text is written, so emitted testbenches are
known-passing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .mulgen import compute_latency, GeneratorConfig
from .netlist import Netlist
from .sim import OperandValue, run_to_output
from .vhdl import EmitterOptions, check_identifier, default_entity_name

DEFAULT_CLOCK_PERIOD = 10  # time units per clock cycle, pipelined only

# integer'image works on 32-bit signed integers only; wider products are
# compared as bit-string literals and reported in hex.
INTEGER_REPORT_BITS = 31


class PlanError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class TestVector:
    a: OperandValue
    b: OperandValue
    expected: int

    def __post_init__(self):
        if self.expected != self.a.value * self.b.value:
            raise PlanError(
                f"expected value {self.expected} is not {self.a.value}*{self.b.value}")


@dataclass(slots=True)
class TestbenchPlan:
    vectors: list
    wait_time: int
    clock_period: int | None
    seed: int


def generate_vectors(cfg: GeneratorConfig, count: int, seed: int):
    """Seeded uniform operand pairs with exact precomputed products."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        a = OperandValue(rng.getrandbits(cfg.width_a), cfg.width_a)
        b = OperandValue(rng.getrandbits(cfg.width_b), cfg.width_b)
        out.append(TestVector(a=a, b=b, expected=a.value * b.value))
    return out


def make_plan(nl: Netlist, count: int, seed: int) -> TestbenchPlan:
    """Vectors plus settle timing derived from the circuit's latency."""
    cfg = GeneratorConfig(nl.width_a, nl.width_b, nl.pipelined)
    vectors = generate_vectors(cfg, count, seed)
    latency = compute_latency(nl)
    if nl.pipelined:
        return TestbenchPlan(vectors=vectors, wait_time=latency.cycles + 1,
                             clock_period=DEFAULT_CLOCK_PERIOD, seed=seed)
    return TestbenchPlan(vectors=vectors, wait_time=latency.gate_units + 1,
                         clock_period=None, seed=seed)


def _shift_add_product(a: int, b: int) -> int:
    """Independent product path used to cross-check plan expectations."""
    acc = 0
    while b:
        if b & 1:
            acc += a
        a <<= 1
        b >>= 1
    return acc


def self_check_plan(nl: Netlist, plan: TestbenchPlan) -> bool:
    """Re-verify every expected value both arithmetically and against
    the gate-level simulator.  Raises PlanError on any mismatch."""
    for idx, vec in enumerate(plan.vectors):
        independent = _shift_add_product(vec.a.value, vec.b.value)
        if independent != vec.expected:
            raise PlanError(f"vector {idx}: expected {vec.expected}, "
                            f"independent product says {independent}")
        got = run_to_output(nl, vec.a, vec.b)
        if got != vec.expected:
            raise PlanError(f"vector {idx}: circuit computes {got}, "
                            f"expected {vec.expected} for {vec.a.value}x{vec.b.value}")
    return True


def emit_testbench(nl: Netlist, plan: TestbenchPlan,
                   options: EmitterOptions | None = None) -> str:
    """Render the self-checking testbench as one VHDL design unit."""
    options = options or EmitterOptions()
    for vec in plan.vectors:
        if vec.a.width != nl.width_a or vec.b.width != nl.width_b:
            raise PlanError(f"vector widths {vec.a.width}x{vec.b.width} do not "
                            f"match netlist {nl.width_a}x{nl.width_b}")

    entity = options.entity_name or default_entity_name(nl)
    check_identifier(entity)
    tb = f"{entity}_tb"
    ind = " " * options.indent
    n, k = nl.width_a, nl.width_b
    wide = n + k > INTEGER_REPORT_BITS

    lines = []
    lines.append("library ieee;")
    lines.append("use ieee.std_logic_1164.all;")
    lines.append("")
    lines.append(f"entity {tb} is")
    lines.append(f"end entity {tb};")
    lines.append("")
    lines.append(f"architecture bench of {tb} is")
    lines.append(f"{ind}signal sx : std_logic_vector({n - 1} downto 0);")
    lines.append(f"{ind}signal sy : std_logic_vector({k - 1} downto 0);")
    lines.append(f"{ind}signal sp : std_logic_vector({n + k - 1} downto 0);")
    if nl.pipelined:
        lines.append(f"{ind}signal clk : std_logic := '0';")
        lines.append(f"{ind}signal done : boolean := false;")
    lines.append(f"{ind}constant waittime : integer := {plan.wait_time};")
    if not wide:
        lines.append(f"{ind}function vec2int(v : std_logic_vector) return integer is")
        lines.append(f"{ind}{ind}variable r : integer := 0;")
        lines.append(f"{ind}begin")
        lines.append(f"{ind}{ind}for i in v'high downto v'low loop")
        lines.append(f"{ind}{ind}{ind}r := r * 2;")
        lines.append(f"{ind}{ind}{ind}if v(i) = '1' then")
        lines.append(f"{ind}{ind}{ind}{ind}r := r + 1;")
        lines.append(f"{ind}{ind}{ind}end if;")
        lines.append(f"{ind}{ind}end loop;")
        lines.append(f"{ind}{ind}return r;")
        lines.append(f"{ind}end function;")
    lines.append("begin")

    port_map = ["x => sx", "y => sy"]
    if nl.pipelined:
        port_map.append("clk => clk")
    port_map.append("p => sp")
    lines.append(f"{ind}uut : entity work.{entity}")
    lines.append(f"{ind}{ind}port map ({', '.join(port_map)});")
    lines.append("")
    if nl.pipelined:
        half = plan.clock_period // 2
        lines.append(f"{ind}clocking : process")
        lines.append(f"{ind}begin")
        lines.append(f"{ind}{ind}while not done loop")
        lines.append(f"{ind}{ind}{ind}clk <= '0';")
        lines.append(f"{ind}{ind}{ind}wait for {half} ns;")
        lines.append(f"{ind}{ind}{ind}clk <= '1';")
        lines.append(f"{ind}{ind}{ind}wait for {half} ns;")
        lines.append(f"{ind}{ind}end loop;")
        lines.append(f"{ind}{ind}wait;")
        lines.append(f"{ind}end process;")
        lines.append("")

    lines.append(f"{ind}stimulus : process")
    lines.append(f"{ind}begin")
    for vec in plan.vectors:
        lines.extend(_vector_block(nl, plan, vec, ind, wide))
    if nl.pipelined:
        lines.append(f"{ind}{ind}done <= true;")
    lines.append(f"{ind}{ind}wait;")
    lines.append(f"{ind}end process;")
    lines.append(f"end architecture bench;")
    return "\n".join(lines) + "\n"


def _vector_block(nl, plan, vec, ind, wide):
    lines = []
    expected = vec.expected
    lines.append(f"{ind}{ind}-- input vector: {vec.a.value}")
    lines.append(f'{ind}{ind}sx <= "{vec.a.bitstring()}";')
    lines.append(f"{ind}{ind}-- input vector: {vec.b.value}")
    lines.append(f'{ind}{ind}sy <= "{vec.b.bitstring()}";')
    if nl.pipelined:
        lines.append(f"{ind}{ind}wait for waittime * {plan.clock_period} ns;")
    else:
        lines.append(f"{ind}{ind}wait for waittime * 1 ns;")
    lines.append(f"{ind}{ind}-- output: {expected}")
    if not wide:
        lines.append(f"{ind}{ind}assert (vec2int(sp) = {expected})")
        lines.append(f'{ind}{ind}{ind}report "TESTBENCH Output: " '
                     f"& integer'image(vec2int(sp))")
        lines.append(f'{ind}{ind}{ind}{ind}& " Expected: " '
                     f"& integer'image({expected})")
        lines.append(f"{ind}{ind}{ind}severity error;")
        lines.append(f"{ind}{ind}assert (vec2int(sp) /= {expected})")
        lines.append(f'{ind}{ind}{ind}report "TESTBENCH OK" severity note;')
    else:
        bits = OperandValue(expected, nl.width_a + nl.width_b)
        hexstr = format(expected, "x")
        lines.append(f'{ind}{ind}assert (sp = "{bits.bitstring()}")')
        lines.append(f'{ind}{ind}{ind}report "TESTBENCH Expected (hex): {hexstr}"')
        lines.append(f"{ind}{ind}{ind}severity error;")
        lines.append(f'{ind}{ind}assert (sp /= "{bits.bitstring()}")')
        lines.append(f'{ind}{ind}{ind}report "TESTBENCH OK" severity note;')
    return lines
