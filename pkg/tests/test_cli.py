"""Command-line behaviour: exit codes, summaries, and byte determinism."""

import json

from opetopes.cli import main


def test_enumerate_prints_factorial_counts(tmp_path, capsys):
    out = tmp_path / "twos.json"
    assert main(["enumerate", "--dim", "2", "--bound", "5", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "k=3: 6" in printed
    assert "k=5: 120" in printed


def test_enumerate_zero_dimension(capsys):
    assert main(["enumerate", "--dim", "0", "--bound", "1"]) == 0
    printed = capsys.readouterr().out
    assert "total: 1" in printed


def test_enumerate_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["enumerate", "--dim", "3", "--bound", "3", "--out", str(a)])
    main(["enumerate", "--dim", "3", "--bound", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_fixture_and_check_pass(tmp_path, capsys):
    fix = tmp_path / "z3.json"
    assert main(["fixture", "z3_monoid", "--out", str(fix)]) == 0
    verdict = tmp_path / "verdict.json"
    code = main(["check", str(fix), "--n", "1", "--bound", "4", "--out", str(verdict)])
    assert code == 0
    assert json.loads(verdict.read_text())["pass"] is True


def test_check_fails_with_named_niche(tmp_path, capsys):
    fix = tmp_path / "broken.json"
    main(["fixture", "broken_magma", "--out", str(fix)])
    code = main(["check", str(fix), "--n", "1", "--bound", "4"])
    assert code == 1
    printed = capsys.readouterr().out
    assert "FAIL condition" in printed


def test_check_rejects_garbage(tmp_path, capsys):
    bad = tmp_path / "garbage.json"
    bad.write_text("certainly not a document")
    assert main(["check", str(bad), "--n", "1", "--bound", "4"]) == 2


def test_check_rejects_invalid_sets(tmp_path):
    doc = {
        "format_version": "1",
        "kind": "opetopic_set",
        "max_dim": 1,
        "shape_bound": 2,
        "cells": {"o": "pt", "a": "ar"},
        "faces": {"a": {"infaces": ["o"], "outface": "ghost"}},
    }
    bad = tmp_path / "invalid.json"
    bad.write_text(json.dumps(doc))
    assert main(["check", str(bad), "--n", "0", "--bound", "2"]) == 2


def test_unknown_fixture_is_an_input_error(tmp_path):
    assert main(["fixture", "mystery", "--out", str(tmp_path / "x.json")]) == 2


def test_slice_audit_is_clean(capsys):
    assert main(["slice-audit", "--levels", "2", "--bound", "3"]) == 0
    printed = capsys.readouterr().out
    assert "violations" in printed


def test_check_is_byte_deterministic_across_workers(tmp_path):
    fix = tmp_path / "z2.json"
    main(["fixture", "z2_monoid", "--out", str(fix)])
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    main(["check", str(fix), "--n", "1", "--bound", "2", "--out", str(a)])
    main(["check", str(fix), "--n", "1", "--bound", "2", "--out", str(b)])
    main(["check", str(fix), "--n", "1", "--bound", "2", "--out", str(c), "--workers", "3"])
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_fixture_documents_are_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["fixture", "z2_monoid", "--out", str(a)])
    main(["fixture", "z2_monoid", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_bad_arguments_exit_two(capsys):
    assert main(["enumerate", "--dim", "not-a-number", "--bound", "1"]) == 2


def test_enumerate_text_format(tmp_path):
    out = tmp_path / "twos.txt"
    assert main(
        ["enumerate", "--dim", "2", "--bound", "2", "--out", str(out), "--format", "text"]
    ) == 0
    text = out.read_text()
    assert text.startswith("opetopes dim=2 bound=2")
    assert "[!pt|n|l0]" in text


def test_module_is_runnable(tmp_path):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "opetopes", "enumerate", "--dim", "2", "--bound", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "k=2: 2" in proc.stdout
