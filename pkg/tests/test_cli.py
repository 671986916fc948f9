import json
import subprocess
import sys

import pytest

from csmulgen.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_happy_path_writes_three_files(tmp_path, capsys):
    code = run_cli("--width-a", "4", "--width-b", "4",
                   "--out-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "mul_4x4.vhd").exists()
    assert (tmp_path / "mul_4x4_tb.vhd").exists()
    assert (tmp_path / "mul_4x4_metrics.json").exists()
    out = capsys.readouterr().out
    assert "pass" in out.lower()


def test_pipeline_flag_changes_entity_name(tmp_path):
    assert run_cli("--width-a", "4", "--width-b", "4", "--pipeline",
                   "--out-dir", str(tmp_path)) == 0
    assert (tmp_path / "mul_4x4_p.vhd").exists()


def test_metrics_file_is_valid_json(tmp_path):
    run_cli("--width-a", "3", "--width-b", "5", "--out-dir", str(tmp_path))
    data = json.loads((tmp_path / "mul_3x5_metrics.json").read_text())
    assert data["width_a"] == 3 and data["width_b"] == 5
    assert data["generation_time_ms"] is not None


def test_usage_error_on_bad_width(tmp_path, capsys):
    assert run_cli("--width-a", "0", "--width-b", "4",
                   "--out-dir", str(tmp_path)) == 1
    assert "error" in capsys.readouterr().err


def test_usage_error_on_unknown_flag(capsys):
    assert run_cli("--frobnicate") == 1


def test_usage_error_on_exhaustive_too_wide(tmp_path, capsys):
    assert run_cli("--width-a", "16", "--width-b", "16",
                   "--verify", "exhaustive", "--out-dir", str(tmp_path)) == 1


def test_capacity_ceiling_respected(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CSMULGEN_MAX_WIDTH", "4")
    assert run_cli("--width-a", "5", "--width-b", "2",
                   "--out-dir", str(tmp_path)) == 1
    assert "ceiling" in capsys.readouterr().err


def test_verify_off_skips_simulation(tmp_path, capsys):
    assert run_cli("--width-a", "4", "--width-b", "4", "--verify", "off",
                   "--out-dir", str(tmp_path)) == 0
    assert "verifying" not in capsys.readouterr().out


def test_entity_name_override(tmp_path):
    assert run_cli("--width-a", "2", "--width-b", "2",
                   "--entity-name", "tiny_mult",
                   "--out-dir", str(tmp_path)) == 0
    assert (tmp_path / "tiny_mult.vhd").exists()
    text = (tmp_path / "tiny_mult_tb.vhd").read_text()
    assert "tiny_mult_tb" in text


def test_reserved_entity_name_fails_cleanly(tmp_path, capsys):
    code = run_cli("--width-a", "2", "--width-b", "2",
                   "--entity-name", "signal", "--out-dir", str(tmp_path))
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_repeat_runs_are_byte_identical(tmp_path):
    a_dir, b_dir = tmp_path / "a", tmp_path / "b"
    for d in (a_dir, b_dir):
        assert run_cli("--width-a", "6", "--width-b", "6", "--pipeline",
                       "--seed", "11", "--tests", "17",
                       "--out-dir", str(d)) == 0
    for name in ("mul_6x6_p.vhd", "mul_6x6_p_tb.vhd"):
        assert (a_dir / name).read_bytes() == (b_dir / name).read_bytes()
    am = json.loads((a_dir / "mul_6x6_p_metrics.json").read_text())
    bm = json.loads((b_dir / "mul_6x6_p_metrics.json").read_text())
    am.pop("generation_time_ms"), bm.pop("generation_time_ms")
    assert am == bm


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "csmulgen",
         "--width-a", "2", "--width-b", "3", "--out-dir", str(tmp_path)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert (tmp_path / "mul_2x3.vhd").exists()


def test_verification_failure_exit_code(tmp_path, monkeypatch, capsys):
    import csmulgen.cli as cli_mod
    from csmulgen.netlist import FULL_ADDER
    real = cli_mod.generate_with_annotations

    def sabotaged(cfg):
        nl, ann = real(cfg)
        victim = next(p for p in nl.primitives if p.kind == FULL_ADDER)
        victim.outputs[0], victim.outputs[1] = \
            victim.outputs[1], victim.outputs[0]
        return nl, ann

    monkeypatch.setattr(cli_mod, "generate_with_annotations", sabotaged)
    code = run_cli("--width-a", "4", "--width-b", "4",
                   "--out-dir", str(tmp_path))
    assert code == 3
