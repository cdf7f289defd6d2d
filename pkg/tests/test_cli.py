import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from locarray.cli import main

DATA = Path(__file__).parents[1] / "src" / "locarray" / "data"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_find_k3():
    code, out = run("find", "--k", 3, "--v", 2, "--t", 2)
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 6 and data["is_minimum"] is True


def test_find_rejects_t_above_k(capsys):
    code, out = run("find", "--k", 2, "--v", 2, "--t", 3)
    assert code == 2
    assert out == ""
    assert "exceeds" in capsys.readouterr().err


def test_find_output_verifies(tmp_path):
    code, out = run("find", "--k", 4, "--v", 2, "--out", tmp_path / "r.json", "--log-csv", tmp_path / "log.csv")
    assert code == 0
    data = json.loads(out)
    rows = data["array"]
    text = f"{len(rows)} 4 2 2\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n"
    (tmp_path / "a.txt").write_text(text)
    assert run("verify", tmp_path / "a.txt")[0] == 0
    assert (tmp_path / "log.csv").read_text().splitlines()[0] == "n,outcome,seconds"
    code, out = run("report", tmp_path / "r.json")
    assert code == 0 and "Yes" in out


def test_find_nothing_within_cap():
    code, out = run("find", "--k", 3, "--v", 2, "--n-start", 3, "--n-max", 4)
    assert code == 1
    assert json.loads(out)["log"][0]["outcome"] == "U"


def test_verify_locating11():
    code, out = run("verify", DATA / "locating11.txt", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["covering"] and report["locating_1t"] and report["locating_bar1t"]
    assert report["witness"] is None


def test_verify_covering5_witness():
    code, out = run("verify", DATA / "covering5.txt", "--json")
    assert code == 1
    report = json.loads(out)
    assert report["covering"] and not report["locating_1t"]
    shared = {((1, 0), (2, 1)), ((2, 1), (3, 1)), ((2, 1), (4, 0))}
    pair = {tuple(map(tuple, T)) for T in report["witness"]["pair"]}
    assert pair <= shared
    assert report["witness"]["rows"] == [3]


def test_verify_human_readable():
    code, out = run("verify", DATA / "covering5.txt")
    assert code == 1
    assert "indistinguishable" in out and "rows=[3]" in out


def test_verify_uncovered(tmp_path):
    (tmp_path / "a.txt").write_text("2 2 2 2\n0 0\n1 1\n")
    code, out = run("verify", tmp_path / "a.txt", "--json")
    assert code == 1
    assert json.loads(out)["witness"]["kind"] == "uncovered"


def test_verify_domain_violation(tmp_path):
    (tmp_path / "a.txt").write_text("1 2 2 2\n0 2\n")
    assert run("verify", tmp_path / "a.txt")[0] == 2


def test_verify_strength_override():
    code, out = run("verify", DATA / "locating7.txt", "--t", 1, "--json")
    assert json.loads(out)["t"] == 1


@pytest.mark.parametrize("outcomes,expected", [("PPPFFPP", "Located F3=1 F4=0"), ("PPPPPPP", "NoFault")])
def test_locate(tmp_path, outcomes, expected):
    (tmp_path / "o.txt").write_text(outcomes + "\n")
    code, out = run("locate", DATA / "locating7.txt", tmp_path / "o.txt")
    assert code == 0
    assert out.strip() == expected


def test_locate_json_inconsistent(tmp_path):
    (tmp_path / "o.txt").write_text("FFFFFFF\n")
    code, out = run("locate", DATA / "locating7.txt", tmp_path / "o.txt", "--json")
    assert code == 0 and json.loads(out)["result"] == "Inconsistent"


def test_locate_wrong_length(tmp_path):
    (tmp_path / "o.txt").write_text("PPF\n")
    assert run("locate", DATA / "locating7.txt", tmp_path / "o.txt")[0] == 2


def test_locate_refuses_non_locating(tmp_path):
    (tmp_path / "o.txt").write_text("PPFPP\n")
    assert run("locate", DATA / "covering5.txt", tmp_path / "o.txt")[0] == 3


def test_encode_deterministic(tmp_path):
    for name in ("a", "b"):
        code, _ = run("encode", "--k", 3, "--v", 2, "--t", 2, "--n", 6, "--scheme", "alt", "--sb",
                      "--out", tmp_path / f"{name}.cnf")
        assert code == 0
    assert (tmp_path / "a.cnf").read_bytes() == (tmp_path / "b.cnf").read_bytes()
    assert (tmp_path / "a.cnf.map").read_bytes() == (tmp_path / "b.cnf.map").read_bytes()
    assert (tmp_path / "a.cnf").read_bytes().startswith(b"p cnf ")


def test_encode_rejects_oversized_with_sb():
    assert run("encode", "--n", 9, "--k", 3, "--v", 2, "--sb")[0] == 2
    assert run("encode", "--n", 9, "--k", 3, "--v", 2, "--no-sb")[0] == 0


def test_encode_solve_externally_then_verify(tmp_path):
    """DIMACS + map files are enough for outside tooling to rebuild the array."""
    from locarray.backend import builtin_solve
    from locarray.encoder import read_dimacs

    run("encode", "--k", 4, "--v", 2, "--n", 7, "--out", tmp_path / "i.cnf")
    n_vars, clauses = read_dimacs((tmp_path / "i.cnf").read_bytes())
    values = builtin_solve((n_vars, clauses)).assignment
    cells = {}
    for line in (tmp_path / "i.cnf.map").read_text().splitlines():
        parts = line.split()
        if parts[1] == "x" and values[int(parts[0])]:
            cells[(int(parts[2]), int(parts[3]))] = int(parts[4])
    rows = [[cells[(r, i)] for i in range(1, 5)] for r in range(1, 8)]
    (tmp_path / "a.txt").write_text("7 4 2 2\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    assert run("verify", tmp_path / "a.txt")[0] == 0


def test_bounds():
    assert run("bounds", "--k", 8, "--v", 2, "--t", 2)[1].strip() == "10 (table)"
    assert run("bounds", "--k", 50, "--v", 2, "--t", 2)[1].strip() == "4 (trivial)"
    assert run("bounds", "--k", 13, "--v", 3, "--t", 2)[1].strip() == "24 (table)"


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "locarray.cli", "bounds", "--k", "3", "--v", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "14 (table)"
