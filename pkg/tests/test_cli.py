import json
import subprocess
import sys
from pathlib import Path

import pytest

from cdalg.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "D401")
    assert code == 0 and "CD-algebra: yes" in out and "4 > 2 > 1 > 0" in out
    f = tmp_path / "x.alg"
    f.write_text("algebra X\ndim 2\ne1*e1 = e2\ne1*e2 = e1\n")
    code, out, _ = run(capsys, "check", f)
    assert code == 1 and "CD-algebra: no" in out


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", DATA / "catalog" / "N3_1.alg", "--extended")
    assert code == 0
    assert "square_dimension: 1" in out and "annihilator_dimension: 1" in out
    code, out, _ = run(capsys, "invariants", "N2", "--sample", "alpha=1/2")
    assert code == 0 and "N2(alpha=1/2)" in out
    code, _, err = run(capsys, "invariants", "N2", "--sample", "gamma=1")
    assert code == 2 and "gamma" in err


def test_verify_exit_codes(capsys):
    single = DATA / "single"
    assert run(capsys, "verify", single / "diag.cert")[0] == 0
    code, out, _ = run(capsys, "verify", single / "diag_corrupted.cert")
    assert code == 1 and "(1,2,3)" in out
    code, _, err = run(capsys, "verify", single / "theta.cert")
    assert code == 2 and "sqrt not allowed" in err
    assert run(capsys, "verify", single / "theta.cert", "--mode", "sampled", "--seed", "3")[0] == 0


def test_verify_deterministic(capsys):
    args = ["verify", DATA / "single" / "diag_corrupted.cert"]
    assert run(capsys, *args) == run(capsys, *args)


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "missing.cert")[0] == 2
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra B\ndim 2\ne1*e1 = 2e2\n")
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "line 3" in err
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "nondeg", "N2", "zero3")[0] == 2


def test_nondeg(capsys):
    cat = DATA / "catalog"
    code, out, _ = run(capsys, "nondeg", cat / "N3_1.alg", cat / "N2_1.alg")
    assert code == 0 and "blocked(square dimension" in out
    code, out, _ = run(capsys, "nondeg", cat / "N2_1.alg", "zero4", "--extended")
    assert code == 0 and out.strip().endswith("possible")


def test_graph(capsys, tmp_path):
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    code, out, _ = run(capsys, "graph", DATA / "catalog", DATA / "certificates", "--dot", dot, "--json", js)
    assert code == 0 and "component candidate" in out
    assert set(json.loads(js.read_text())) == {"nodes", "edges", "blocks", "components"}
    assert dot.read_text().startswith("digraph")


def test_graph_rejects_bad_certificate(capsys, tmp_path):
    certs = tmp_path / "certs"
    certs.mkdir()
    (certs / "bad.cert").write_text((DATA / "single" / "diag_corrupted.cert").read_text())
    code, _, err = run(capsys, "graph", DATA / "catalog", certs)
    assert code == 1 and "rejected" in err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cdalg", "check", "zero4"], capture_output=True, text=True)
    assert out.returncode == 0 and "CD-algebra: yes" in out.stdout
