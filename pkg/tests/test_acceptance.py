"""End-to-end acceptance checks.

Each test covers one numbered criterion and prints a single PASS/FAIL
line even under pytest output capture.  Criterion 2 includes a large
512x512 generation and is the slow part of the suite.
"""

import json

import pytest

from csmulgen.mulgen import (
    GeneratorConfig, build_partial_products, compute_latency,
    generate_multiplier, generate_with_annotations, run_reduction,
)
from csmulgen.netlist import (
    AND2, DFF, FULL_ADDER, Netlist, max_stage_depth, register_depth, validate,
)
from csmulgen.sim import (
    initial_state, run_to_output, step_cycle, verify_exhaustive, verify_random,
)
from csmulgen import tbgen
from csmulgen.vhdl import emit_vhdl
from csmulgen.cli import main as cli_main

import pathlib

GOLDENS = pathlib.Path(__file__).parent / "goldens"


@pytest.fixture
def report(capsys):
    def _report(number, label, ok):
        with capsys.disabled():
            print(f"\ncriterion {number} ({label}): {'PASS' if ok else 'FAIL'}")
        assert ok, f"criterion {number} failed"
    return _report


def test_criterion_1_exhaustive_small_grid(report):
    ok = True
    for n in range(1, 7):
        for k in range(1, 7):
            for pipe in (False, True):
                nl = generate_multiplier(GeneratorConfig(n, k, pipe))
                r = verify_exhaustive(nl)
                ok = ok and r.passed and r.tested == 2 ** (n + k)
    report(1, "exhaustive 1..6 grid, both modes", ok)


def test_criterion_2_random_at_scale(report):
    ok = True
    for n in (8, 16, 32, 64):
        for k in (8, 16, 32, 64):
            nl = generate_multiplier(GeneratorConfig(n, k, False))
            r = verify_random(nl, 100, seed=n * 100 + k)
            ok = ok and r.passed and r.tested == 100
    big = generate_multiplier(GeneratorConfig(512, 512, False))
    big_report = verify_random(big, 3, seed=1)
    ok = ok and big_report.passed
    report(2, "100 random pairs at scale plus 512x512", ok)


def test_criterion_3_structural_invariants(report):
    ok = True
    for n in range(1, 17):
        for k in range(1, 17):
            nl, ann = generate_with_annotations(GeneratorConfig(n, k, False))
            ok = ok and sum(1 for p in nl.primitives if p.kind == AND2) == n * k
            fa_red = ann.reduction_full_adders
            ok = ok and fa_red == n * k - ann.dots_entering_final
            probe = Netlist.create(n, k)
            matrix = build_partial_products(GeneratorConfig(n, k, False), probe)
            matrix, _ = run_reduction(matrix, probe)
            ok = ok and all(h <= 2 for h in matrix.heights())
            ok = ok and sum(1 for p in nl.primitives if p.kind == DFF) == 0
            ok = ok and validate(nl).is_empty()
    report(3, "structural invariants over 1..16 grid", ok)


def test_criterion_4_pipeline_properties(report):
    ok = True
    for n, k in ((4, 4), (8, 8), (13, 63), (16, 16)):
        nl = generate_multiplier(GeneratorConfig(n, k, True))
        depths = {register_depth(nl, bit) for bit in nl.output_p}
        ok = ok and len(depths) == 1
        latency = depths.pop()
        ok = ok and compute_latency(nl).cycles == latency

        a, b = (1 << n) - 1, (1 << k) - 1
        state = initial_state(nl, a, b)
        for _ in range(latency):
            state = step_cycle(nl, state, a, b)
        ok = ok and state.output_value(nl) == a * b

        feed = [(i * 7 + 3) % (1 << n) for i in range(latency + 5)]
        feed = [(x, (x * 5 + 1) % (1 << k)) for x in feed]
        state = initial_state(nl, *feed[0])
        got = []
        for cycle in range(1, len(feed)):
            state = step_cycle(nl, state, *feed[cycle])
            if cycle >= latency:
                got.append(state.output_value(nl))
        want = [x * y for x, y in feed[:len(got)]]
        ok = ok and got == want

        ok = ok and max_stage_depth(nl) <= 2
    report(4, "pipeline latency, streaming and stage depth", ok)


def test_criterion_5_testbench_integrity(report):
    ok = True
    for n, k, pipe in ((8, 8, False), (8, 8, True), (5, 11, True)):
        nl = generate_multiplier(GeneratorConfig(n, k, pipe))
        plan = tbgen.make_plan(nl, 50, seed=2)
        ok = ok and tbgen.self_check_plan(nl, plan)
        for vec in plan.vectors:
            ok = ok and vec.expected == vec.a.value * vec.b.value
    nl = generate_multiplier(GeneratorConfig(8, 8, False))
    plan = tbgen.make_plan(nl, 10, seed=6400)
    first = plan.vectors[0]
    ok = ok and (first.a.value, first.b.value, first.expected) == (53, 23, 1219)
    text = tbgen.emit_testbench(nl, plan)
    ok = ok and '"00110101"' in text and '"00010111"' in text
    ok = ok and "1219" in text
    report(5, "testbench expected values and 53x23 exemplar", ok)


def test_criterion_6_determinism_and_goldens(report, tmp_path):
    ok = True
    for d in (tmp_path / "a", tmp_path / "b"):
        code = cli_main(["--width-a", "8", "--width-b", "8", "--pipeline",
                         "--seed", "4", "--tests", "20", "--out-dir", str(d)])
        ok = ok and code == 0
    for name in ("mul_8x8_p.vhd", "mul_8x8_p_tb.vhd"):
        ok = ok and ((tmp_path / "a" / name).read_bytes()
                     == (tmp_path / "b" / name).read_bytes())
    ok = ok and (emit_vhdl(generate_multiplier(GeneratorConfig(2, 2, False)))
                 == (GOLDENS / "mul_2x2.vhd").read_text())
    ok = ok and (emit_vhdl(generate_multiplier(GeneratorConfig(8, 8, True)))
                 == (GOLDENS / "mul_8x8_p.vhd").read_text())
    report(6, "byte-identical reruns and stable goldens", ok)


def test_criterion_7_fault_sensitivity(report):
    ok = True
    base = generate_multiplier(GeneratorConfig(4, 4, False))
    fa_positions = [i for i, p in enumerate(base.primitives)
                    if p.kind == FULL_ADDER]
    ok = ok and len(fa_positions) > 0
    for pos in fa_positions:
        nl = generate_multiplier(GeneratorConfig(4, 4, False))
        victim = nl.primitives[pos]
        victim.outputs[0], victim.outputs[1] = \
            victim.outputs[1], victim.outputs[0]
        r = verify_exhaustive(nl)
        ok = ok and not r.passed and r.counterexample is not None
        if r.counterexample is not None:
            ce = r.counterexample
            ok = ok and ce["expected"] == ce["a"] * ce["b"]
            ok = ok and ce["got"] != ce["expected"]
    report(7, "swapped FA outputs always caught", ok)
