import csv
import io
import subprocess
import sys

import pytest

from tropnev.cli import main

DOC = """pl f { left_slope=-1 points=(-2,0)(1,1)(3,3) right_slope=2 }
entire g0 { monomials=(0,0)(-1,-2) }
entire g1 { monomials=(0,0)(1,-1)(2,-3) }
curve c { n=1 components=g0,g1 }
poly P0 { nvars=2 degree=1 terms=([1,0],0)([0,1],0) }
poly P1 { nvars=2 degree=1 terms=([1,0],0)([0,1],-1) }
poly P2 { nvars=2 degree=1 terms=([1,0],0)([0,1],-2) }
poly P3 { nvars=2 degree=1 terms=([1,0],0)([0,1],1) }
mat A { rows=[1,-inf;-inf,1] }
instance I { curve=c polys=P0,P1,P2,P3 c=1 grid=1:400:7 tol=1/20 }
"""


@pytest.fixture
def doc(tmp_path):
    p = tmp_path / "f.trop"
    p.write_text(DOC)
    return str(p)


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, list(csv.reader(io.StringIO(out.out))), out.err


def test_jensen_zero_residuals(doc, capsys):
    code, rows, err = run(["jensen", "--input", doc, "--name", "f", "--grid", "1:50:1"], capsys)
    assert code == 0
    assert rows[0] == ["r", "m", "N", "T", "jensen_residual"]
    assert len(rows) == 51 and all(r[-1] == "0" for r in rows[1:])
    assert "PASS" in err


def test_fmt_constant(doc, capsys):
    code, rows, _ = run(["fmt", "--input", doc, "--curve", "c", "--poly", "P1", "--grid", "1:30:1"], capsys)
    assert code == 0 and len({r[-1] for r in rows[1:]}) == 1
    code, rows, _ = run(["fmt", "--input", doc, "--name", "f", "--value", "-1", "--grid", "1:30:1"], capsys)
    assert code == 0 and len({r[-1] for r in rows[1:]}) == 1


def test_smt_to_file(doc, tmp_path, capsys):
    out = tmp_path / "smt.csv"
    code, _, err = run(["smt", "--input", doc, "--grid", "1:2000:7", "--c", "1", "--tol", "1/20", "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0][:4] == ["r", "m", "N", "T"] and len(rows) == 287
    assert "lam=0" in err


def test_smt_fails_on_tight_tolerance(doc, capsys):
    code, _, err = run(["smt", "--input", doc, "--grid", "1:40:1", "--tol", "1/100000"], capsys)
    assert code == 1 and "FAIL" in err


def test_other_subcommands(doc, capsys):
    assert run(["tp1smt", "--input", doc, "--name", "f", "--values", "0,1,2,-1", "--grid", "1:300:7"], capsys)[0] == 0
    assert run(["defect", "--input", doc, "--curve", "c", "--poly", "P1", "--grid", "1:60:1"], capsys)[0] == 0
    code, rows, _ = run(["ddg", "--input", doc, "--curve", "c"], capsys)
    assert code == 0 and rows[1] == ["P0", "2", "false"]
    code, rows, _ = run(["casoratian", "--input", doc, "--names", "g0,g1", "--grid", "-5:5:1/2"], capsys)
    assert code == 0 and all(r[1] == r[2] for r in rows[1:])
    code, rows, _ = run(["tropdet", "--input", doc], capsys)
    assert rows[1] == ["A", "2", "true", "true"]
    code, rows, _ = run(["eval", "--input", doc, "--name", "f", "--points", "0,3,1/3"], capsys)
    assert [r[2] for r in rows[1:]] == ["2/3", "3", "7/9"]
    code, rows, err = run(["nevanlinna", "--input", doc, "--name", "f", "--grid", "1:20:1", "--fit"], capsys)
    assert code == 0 and "order" in err


def test_gen_with_negative_window(tmp_path, capsys):
    out = tmp_path / "eb.trop"
    assert main(["gen", "e_beta", "--beta", "1/2", "--window", "-20,20", "--out", str(out)]) == 0
    capsys.readouterr()
    code, rows, err = run(["defect", "--input", str(out), "--name", "f", "--value", "-1", "--grid", "1:30:1"], capsys)
    assert code == 0 and "dropped" in err and len(rows) == 21


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.trop"
    bad.write_text("curve c { n=1 components=a,b }")
    code, _, err = run(["jensen", "--input", str(bad), "--grid", "1:2:1"], capsys)
    assert code == 2 and "line 1" in err
    assert run(["jensen", "--input", str(tmp_path / "missing.trop"), "--grid", "1:2:1"], capsys)[0] == 2
    assert run(["gen", "e_beta", "--beta", "2", "--window", "-1,1"], capsys)[0] == 2


def test_deterministic_output(tmp_path):
    outs = []
    for k in range(2):
        p = tmp_path / f"g{k}.trop"
        main(["gen", "random_curve", "--seed", "4", "--n", "2", "--q", "4", "--out", str(p)])
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_threads_do_not_change_output(doc, tmp_path):
    env_outs = []
    for threads in ("1", "4"):
        res = subprocess.run(
            [sys.executable, "-m", "tropnev.cli", "jensen", "--input", doc, "--name", "f", "--grid", "1:80:1"],
            capture_output=True, env={"TROP_THREADS": threads, "PATH": ""}, check=True,
        )
        env_outs.append(res.stdout)
    assert env_outs[0] == env_outs[1]
