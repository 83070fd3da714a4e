import json
import subprocess
import sys

import pytest

from cffcover.cli import main
from cffcover.constructions import SetPairFamily, chain_setpairs
from cffcover.cover import loads_cover
from cffcover.graphs import bi_intersection
from cffcover.setsystem import parse_incidence


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_human(capsys):
    code, out, _ = run(capsys, "bounds", "--r", 2, "--w", 1, "--t", 4, "--d", 1)
    assert code == 0
    assert "exact" in out and "[exact]" in out and "best certified lower: 4" in out


def test_bounds_structured(capsys):
    code, out, _ = run(capsys, "bounds", "--r", 2, "--w", 2, "--t", 6, "--c", 0.125, "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["best_certified_lower"] == 14 and doc["parameters"]["c"] == 0.125
    # reals carry six significant digits
    lov = next(e for e in doc["entries"] if e["name"] == "lovasz")
    assert lov["value"] == float(f"{lov['value']:.6g}")
    frac = next(e for e in doc["entries"] if e["name"] == "fractional")
    assert frac["value"] == 10
    code2, out2, _ = run(capsys, "bounds", "--r", 2, "--w", 2, "--t", 6, "--c", 0.125, "--format", "structured")
    assert out2 == out


def test_verify_cff(tmp_path, capsys):
    f = tmp_path / "sys.txt"
    f.write_text("100\n010\n001")
    assert run(capsys, "verify-cff", f, "--r", 1, "--w", 1, "--d", 1)[0] == 0
    f.write_text("10\n11")
    code, out, _ = run(capsys, "verify-cff", f, "--r", 1, "--w", 1, "--d", 1)
    assert code == 1 and "L=[1] M=[2]" in out
    code, out, _ = run(capsys, "verify-cff", f, "--r", 1, "--w", 1, "--format", "structured")
    assert json.loads(out)["witness"] == {"L": [1], "M": [2], "shortfall": 1}


def test_construct_then_verify(tmp_path, capsys):
    h = tmp_path / "h.txt"
    assert run(capsys, "construct", "hadamard-cff", "--d", 2, "-o", h)[0] == 0
    sys_ = parse_incidence(h.read_text())
    assert (sys_.n_points, sys_.t) == (7, 7)
    assert run(capsys, "verify-cff", h, "--r", 1, "--w", 1, "--d", 2)[0] == 0

    m = tmp_path / "m.txt"
    assert run(capsys, "construct", "hadamard", "--order", 12, "-o", m)[0] == 0
    assert run(capsys, "verify-hadamard", m)[0] == 0

    oc = tmp_path / "oc.json"
    assert run(capsys, "construct", "orbit-cover", "--t", 4, "--r", 2, "--w", 1, "-o", oc)[0] == 0
    code, out, _ = run(capsys, "verify-cover", oc)
    assert code == 0 and "level 6" in out


def test_construct_to_stdout(capsys):
    code, out, _ = run(capsys, "construct", "hadamard", "--order", 4)
    assert code == 0 and out.split() == ["++++", "+-+-", "++--", "+--+"]


def test_verify_failures(tmp_path, capsys):
    m = tmp_path / "m.txt"
    m.write_text("++\n++")
    assert run(capsys, "verify-hadamard", m)[0] == 1
    oc = tmp_path / "oc.json"
    run(capsys, "construct", "orbit-cover", "--t", 3, "--r", 1, "--w", 1, "-o", oc)
    assert run(capsys, "verify-cover", oc, "--d", 3)[0] == 1


def test_solve_bc(tmp_path, capsys):
    code, out, _ = run(capsys, "solve-bc", "--family", "kminus:3", "--d", 1)
    assert code == 0 and "= 3" in out
    cov = tmp_path / "c.json"
    code, out, _ = run(capsys, "solve-bc", "--family", "it:5,2,2", "--d", 1, "--format", "structured",
                       "--cover-out", cov, "--threads", 4)
    doc = json.loads(out)
    assert code == 0 and doc["value"] == 10 and doc["exact"]
    assert len(loads_cover(cov.read_text())) == 10
    code, out, _ = run(capsys, "solve-bc", "--family", "complete:3")
    assert code == 0 and "= 2" in out


def test_solve_bc_graph_file(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(bi_intersection(4, 2, 1).dumps())
    code, out, _ = run(capsys, "solve-bc", "--graph", g, "--d", 2, "--format", "structured")
    assert code == 0 and json.loads(out)["value"] == 8


def test_solve_bc_budget(capsys):
    code, out, _ = run(capsys, "solve-bc", "--family", "it:6,2,2", "--d", 2, "--budget", 5)
    assert code == 3 and "inexact" in out


def test_thread_count_does_not_change_output(capsys):
    outs = {run(capsys, "solve-bc", "--family", "kminus:5", "--d", 2, "--threads", n, "--format", "structured")[1]
            for n in (1, 2, 8)}
    assert len(outs) == 1


def test_convert_round_trip(tmp_path, capsys):
    src = tmp_path / "s.txt"
    run(capsys, "construct", "hadamard-cff", "--d", 2, "-o", src)
    cov = tmp_path / "c.json"
    assert run(capsys, "convert", "cff-to-cover", src, "--r", 1, "--w", 1, "--d", 2, "-o", cov)[0] == 0
    assert run(capsys, "verify-cover", cov)[0] == 0
    back = tmp_path / "b.txt"
    assert run(capsys, "convert", "cover-to-cff", cov, "-o", back)[0] == 0
    assert parse_incidence(back.read_text()).n_points == 7
    assert run(capsys, "verify-cff", back, "--r", 1, "--w", 1, "--d", 2)[0] == 0


def test_convert_non_cff(tmp_path, capsys):
    src = tmp_path / "s.txt"
    src.write_text("10\n11\n01")
    code, _, err = run(capsys, "convert", "cff-to-cover", src, "--r", 1, "--w", 1)
    assert code == 1 and "not an" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "lattice-paths", "--i", 2, "--j", 3)
    assert code == 0 and out.splitlines() == ["RRUUU", "RURUU", "# 2 paths"]


def test_setpairs(tmp_path, capsys):
    f = tmp_path / "f.json"
    f.write_text(chain_setpairs(2, 1).dumps())
    assert run(capsys, "setpairs", "check", f, "--mode", "weak")[0] == 0
    code, out, _ = run(capsys, "setpairs", "check", f, "--mode", "cross")
    assert code == 1 and "1 and 2" in out
    g = tmp_path / "g.json"
    g.write_text(SetPairFamily(2, (({1}, {2}), ({2}, {1}))).dumps())
    assert run(capsys, "setpairs", "check", g, "--mode", "rw:1,1")[0] == 0
    code, out, _ = run(capsys, "setpairs", "dual", g)
    assert code == 0 and SetPairFamily.loads(out) == SetPairFamily.loads(g.read_text())


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["bounds", "--r", "2"],
    ["setpairs", "check", "x.json", "--mode", "strange"],
    ["bounds", "--r", "1", "--w", "2", "--t", "2"],
    ["construct", "hadamard", "--order", "6"],
    ["solve-bc", "--family", "wheel:4"],
])
def test_usage_and_domain_errors(argv, capsys):
    assert main(argv) == 2


def test_missing_and_malformed_files(tmp_path, capsys):
    assert main(["verify-cff", str(tmp_path / "nope.txt"), "--r", "1", "--w", "1"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("10\n1x")
    assert main(["verify-cff", str(bad), "--r", "1", "--w", "1"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_bounds_budget_cap(capsys):
    assert main(["bounds", "--r", "7", "--w", "6", "--t", "20"]) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cffcover", "bounds", "--r", "1", "--w", "1", "--t", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "best upper:           4" in proc.stdout
