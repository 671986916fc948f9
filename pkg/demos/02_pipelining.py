"""Pipelined generation: uniform latency and per-cycle streaming.

The pipelined variant registers every reduction boundary, so after an
initial fill of L cycles the design produces one product per clock.
This script measures L, shows that every output bit agrees on it, and
streams a burst of operand pairs through the pipe.
"""

from csmulgen import GeneratorConfig, generate_multiplier
from csmulgen.mulgen import compute_latency
from csmulgen.netlist import max_stage_depth, register_depth
from csmulgen.sim import initial_state, step_cycle

nl = generate_multiplier(GeneratorConfig(8, 8, pipelined=True))
latency = compute_latency(nl).cycles

depths = sorted({register_depth(nl, bit) for bit in nl.output_p})
print(f"latency: {latency} cycles (per-bit register depths: {depths})")
print(f"worst logic depth between registers: {max_stage_depth(nl)} gate units")

feed = [(53, 23), (255, 255), (0, 77), (128, 2), (99, 101), (17, 34)]
print("streaming one pair per cycle:")
state = initial_state(nl, *feed[0])
for cycle in range(1, latency + len(feed)):
    a, b = feed[min(cycle, len(feed) - 1)]
    state = step_cycle(nl, state, a, b)
    if cycle >= latency:
        a0, b0 = feed[cycle - latency]
        got = state.output_value(nl)
        mark = "ok" if got == a0 * b0 else "WRONG"
        print(f"  cycle {cycle:2d}: {a0:3d} * {b0:3d} -> {got:5d}  {mark}")
