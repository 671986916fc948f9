"""Structural VHDL emission.

One design unit per netlist: an entity with x/y/p vector ports (plus
clk when registered) and an architecture with one concurrent statement
group per primitive.  Adders become inline boolean expressions, flip
flops become one clocked process each, constant outputs are assigned
'0' in place.  Output text is byte-deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .netlist import (
    AND2, CONST0, DFF, FULL_ADDER, HALF_ADDER,
    Netlist, validate,
)

# VHDL-93 reserved words; emitted identifiers must avoid these.
RESERVED_WORDS = frozenset("""
abs access after alias all and architecture array assert attribute begin
block body buffer bus case component configuration constant disconnect
downto else elsif end entity exit file for function generate generic
group guarded if impure in inertial inout is label library linkage
literal loop map mod nand new next nor not null of on open or others
out package port postponed procedure process pure range record register
reject rem report return rol ror select severity shared signal sla sll
sra srl subtype then to transport type unaffected units until use
variable wait when while with xnor xor
""".split())

_IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class EmissionError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class EmitterOptions:
    entity_name: str | None = None
    indent: int = 2


def default_entity_name(nl: Netlist) -> str:
    suffix = "_p" if nl.pipelined else ""
    return f"mul_{nl.width_a}x{nl.width_b}{suffix}"


def check_identifier(name: str):
    if not _IDENT_RE.match(name) or name.lower() in RESERVED_WORDS or "__" in name \
            or name.endswith("_"):
        raise EmissionError(f"{name!r} is not a legal VHDL basic identifier")


def name_signals(nl: Netlist):
    """Deterministic signal naming: ports are x/y/p vector slices, the
    clock is clk, internal signals are s<ordinal> in primitive insertion
    order.  Constant-driver outputs stay unnamed and are emitted as '0'
    literals at their use sites."""
    names = {}
    for i, sig in enumerate(nl.input_a):
        names[sig.id] = f"x({i})"
    for i, sig in enumerate(nl.input_b):
        names[sig.id] = f"y({i})"
    if nl.clock is not None:
        names[nl.clock.id] = "clk"
    ordinal = 0
    for prim in nl.primitives:
        if prim.kind == CONST0:
            continue
        for out in prim.outputs:
            names[out.id] = f"s{ordinal}"
            ordinal += 1
    return names


def _const_ids(nl):
    return {p.outputs[0].id for p in nl.primitives if p.kind == CONST0}


def emit_vhdl(nl: Netlist, options: EmitterOptions | None = None) -> str:
    """Render the netlist as one synthesizable VHDL design unit."""
    options = options or EmitterOptions()
    report = validate(nl)
    if not report.is_valid():
        msgs = "; ".join(f.message for f in report.errors)
        raise EmissionError(f"refusing to emit an invalid netlist: {msgs}")

    entity = options.entity_name or default_entity_name(nl)
    check_identifier(entity)
    ind = " " * options.indent
    names = name_signals(nl)
    consts = _const_ids(nl)

    def ref(sig):
        return "'0'" if sig.id in consts else names[sig.id]

    lines = []
    lines.append("library ieee;")
    lines.append("use ieee.std_logic_1164.all;")
    lines.append("")
    lines.append(f"entity {entity} is")
    lines.append(f"{ind}port (")
    ports = [
        f"x : in std_logic_vector({nl.width_a - 1} downto 0)",
        f"y : in std_logic_vector({nl.width_b - 1} downto 0)",
    ]
    if nl.clock is not None:
        ports.append("clk : in std_logic")
    ports.append(f"p : out std_logic_vector({nl.width_a + nl.width_b - 1} downto 0)")
    for i, port in enumerate(ports):
        sep = ";" if i < len(ports) - 1 else ""
        lines.append(f"{ind}{ind}{port}{sep}")
    lines.append(f"{ind});")
    lines.append(f"end entity {entity};")
    lines.append("")
    lines.append(f"architecture structural of {entity} is")
    for prim in nl.primitives:
        if prim.kind == CONST0:
            continue
        for out in prim.outputs:
            lines.append(f"{ind}signal {names[out.id]} : std_logic;")
    lines.append("begin")

    for prim in nl.primitives:
        if prim.kind == AND2:
            a, b = (ref(s) for s in prim.inputs)
            lines.append(f"{ind}{names[prim.outputs[0].id]} <= {a} and {b};")
        elif prim.kind == HALF_ADDER:
            a, b = (ref(s) for s in prim.inputs)
            s_out, c_out = prim.outputs
            lines.append(f"{ind}{names[s_out.id]} <= {a} xor {b};")
            lines.append(f"{ind}{names[c_out.id]} <= {a} and {b};")
        elif prim.kind == FULL_ADDER:
            a, b, c = (ref(s) for s in prim.inputs)
            s_out, c_out = prim.outputs
            lines.append(f"{ind}{names[s_out.id]} <= {a} xor {b} xor {c};")
            lines.append(f"{ind}{names[c_out.id]} <= ({a} and {b}) or "
                         f"({a} and {c}) or ({b} and {c});")
        elif prim.kind == DFF:
            d = ref(prim.inputs[0])
            q = names[prim.outputs[0].id]
            lines.append(f"{ind}process (clk)")
            lines.append(f"{ind}begin")
            lines.append(f"{ind}{ind}if rising_edge(clk) then")
            lines.append(f"{ind}{ind}{ind}{q} <= {d};")
            lines.append(f"{ind}{ind}end if;")
            lines.append(f"{ind}end process;")

    for j, bit in enumerate(nl.output_p):
        lines.append(f"{ind}p({j}) <= {ref(bit)};")
    lines.append(f"end architecture structural;")
    return "\n".join(lines) + "\n"
