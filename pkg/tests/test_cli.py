from __future__ import annotations

import pytest

from frobius.cli import run

HOPF_LHS = "comp(g(1,2,0),tens(s,id),r(2,1,0))"
HOPF_RHS = "frac(comp(g(1,0,0),r(0,1,0)), tens(comp(r(0,1),g(1,0)),comp(r(0,1),g(1,0))))"


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_normalize_fuses_phases(capsys):
    code, out, _ = _run(capsys, "normalize", "comp(g(1,1,1/3), g(1,1,1/3))")
    assert code == 0 and out == "g(1,1,2/3)"


def test_normalize_with_ruleset_and_trace(capsys):
    code, out, _ = _run(capsys, "normalize", "int(4)", "--model", "Z3", "--ruleset", "COLLAPSE(3)", "--trace", "--hide-scalars")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "id"
    assert all(ln.startswith("step ") for ln in lines[:-1]) and len(lines) > 1


def test_normalize_graph_and_dot(capsys, tmp_path):
    code, out, _ = _run(capsys, "normalize", "comp(g(1,2,0), r(2,1,0))", "--format", "graph")
    assert code == 0 and out.startswith("frobius-graph v1")
    f = tmp_path / "d.graph"
    f.write_text(out + "\n")
    code, again, _ = _run(capsys, "normalize", "--in-graph", str(f))
    assert code == 0 and again == "comp(g(1,2,0), r(2,1,0))"
    code, out, _ = _run(capsys, "normalize", "g(1,1,0)", "--format", "dot")
    assert out.startswith("digraph")


def test_eval_matrix_and_dump(capsys):
    code, out, _ = _run(capsys, "eval", "int(2)", "--model", "Z3/integral")
    assert code == 0
    assert out.splitlines() == ["[ 1  0  0 ]", "[ 0  0  1 ]", "[ 0  1  0 ]"]
    code, out, _ = _run(capsys, "eval", "s", "--model", "Z2", "--format", "dump")
    assert out.splitlines()[0].startswith("matrix ") and out.splitlines()[0].endswith(" 2 2")


def test_equiv_exit_codes(capsys):
    model = "Z2@cyclo(8)/unitary"
    assert _run(capsys, "equiv", "--model", model, HOPF_LHS, HOPF_RHS)[:2] == (0, "EQUAL exact")
    code, out, _ = _run(capsys, "equiv", "--model", model, "comp(r(0,1,0),g(1,0,0))", "empty")
    assert code == 1 and out.startswith("UNEQUAL scalar")
    code, out, _ = _run(capsys, "equiv", "--model", model, "--mode", "scalar", "comp(r(0,1,0),g(1,0,0))", "empty")
    assert code == 0 and out.startswith("EQUAL scalar")
    assert _run(capsys, "equiv", "--model", model, "id", "s")[:2] == (0, "EQUAL exact")
    assert _run(capsys, "equiv", "--model", "Z3", "id", "s")[:2] == (1, "UNEQUAL")
    code, _, err = _run(capsys, "equiv", "--model", "Z3", "id", "g(1,2,0)")
    assert code == 2 and "arity" in err


def test_equiv_respects_integral_loops(capsys):
    code, out, _ = _run(capsys, "equiv", "--model", "Z3/integral", "comp(r(1,2,0),r(2,1,0))", "id")
    assert (code, out) == (1, "UNEQUAL scalar 3")


def test_check_rules(capsys):
    code, out, _ = _run(capsys, "check-rules", "--model", "Z3/unitary", "--ruleset", "IFK")
    assert code == 0 and "FAIL" not in out.replace("0 FAIL", "")
    code, out, _ = _run(capsys, "check-rules", "--model", "Z3/integral")
    assert code == 0
    assert "rule r-special scalar 3" in out.splitlines()


def test_characters(capsys):
    code, out, _ = _run(capsys, "characters", "--group", "Z4", "--field", "reals", "--summary")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3 and lines[-1] == "enough false"
    code, out, _ = _run(capsys, "characters", "--group", "Z4", "--field", "f5")
    assert len(out.splitlines()) == 4


def test_intring(capsys):
    code, out, _ = _run(capsys, "intring", "--model", "Z3/integral", "--sum", "1", "1", "--product", "2", "2")
    assert code == 0
    assert "sum 1 1 matches int(2)" in out and "product 2 2 matches int(4)" in out
    code, out, _ = _run(capsys, "intring", "--model", "Z4/integral", "--coprimality", "2")
    assert code == 0 and out == "coprime=false red_comonoid=false green_monoid=false"


def test_yang_baxter(capsys):
    code, out, _ = _run(capsys, "yang-baxter", "--model", "Z2")
    assert code == 0 and out.endswith("0 failures")
    code, out, _ = _run(capsys, "yang-baxter", "--model", "Z2", "--corrupt")
    assert code == 1 and out.splitlines()[0].startswith("FAIL")


def test_witness(capsys):
    code, out, _ = _run(capsys, "witness-no-distlaw", "--model", "Z3", "--g1", "1", "--h1", "2")
    assert code == 0 and out == "g1=1 h1=2 absent"


def test_enough_setlike(capsys):
    assert _run(capsys, "enough-setlike", "--group", "Z4", "--field", "reals")[:2] == (0, "false")
    assert _run(capsys, "enough-setlike", "--group", "Z4", "--field", "cyclo(4)")[:2] == (0, "true")
    assert _run(capsys, "enough-setlike", "--model", "Z4@f5/integral")[:2] == (0, "true")


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "g(1,1", "--model", "Z3"],
        ["eval", "id", "--model", "Z2@f2"],
        ["normalize", "id", "--ruleset", "NOPE"],
        ["characters", "--group", "Zq", "--field", "Q"],
        ["normalize", "--in-graph", "/nonexistent/file"],
    ],
)
def test_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and err


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("comp(s, s)\n"))
    code, out, _ = _run(capsys, "normalize", "-", "--model", "Z3", "--ruleset", "IF")
    assert code == 0 and out == "id"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "frobius.cli", "normalize", "comp(s, s)", "--model", "Z2", "--ruleset", "IF"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "id"
