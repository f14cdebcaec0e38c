import dataclasses
import json
import subprocess
import sys

import pytest

from polarfol import cli
from polarfol.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_sl2(capsys):
    code, out, _ = run(capsys, "info", "sl2r")
    info = json.loads(out)["info"]
    assert code == 0 and info["dim"] == 3 and info["rank"] == 1


def test_info_su21(capsys):
    code, out, _ = run(capsys, "info", "su21")
    data = json.loads(out)
    assert data["schema"] == "polarfol/1" and data["family"] == "su21"
    info = data["info"]
    assert (info["dim"], info["rank"]) == (8, 1)
    assert [r["multiplicity"] for r in info["roots"]] == [2, 1]


def test_unknown_family(capsys):
    code, out, err = run(capsys, "info", "nosuch")
    assert code == 2 and not out
    assert "nosuch" in err and "sl3r" in err and "so25" in err


def test_info_markdown(capsys):
    code, out, _ = run(capsys, "info", "so25", "--format", "md")
    assert code == 0 and out.startswith("## so(2,5)")
    assert "| (0, 1) | 3 | 1 |" in out


def test_roots_show_writes_json(capsys, tmp_path):
    path = tmp_path / "so25.json"
    code, out, _ = run(capsys, "roots", "show", "so25", "--json", str(path))
    assert code == 0 and path.read_text() == out
    table = json.loads(out)["roots"]
    # A_ij = 2<a_i, a_j>/|a_j|^2 with the long root a_1 first
    assert table["cartan_matrix"] == [[2, -2], [-1, 2]]
    assert len(table["simple_roots"]) == 2


def test_classify_sl2(capsys):
    code, out, _ = run(capsys, "classify", "sl2r")
    data = json.loads(out)
    assert code == 0 and data["certified"]
    assert [r["spec"]["case"] for r in data["reports"]] == ["D"]


def test_classify_so25(capsys):
    code, out, _ = run(capsys, "classify", "so25", "--seed", "1")
    data = json.loads(out)
    assert code == 0 and data["seed"] == 1
    assert {r["spec"]["case"] for r in data["reports"]} == {"A", "B", "D", "E"}
    assert all(r["certified"] for r in data["reports"])


def test_classify_markdown(capsys):
    code, out, _ = run(capsys, "classify", "sl3r", "--format", "md")
    assert code == 0
    rows = [line for line in out.splitlines() if line.startswith("| ") and "case" not in line]
    assert rows and all(line.rstrip().endswith("| yes |") for line in rows)


def test_seed_determinism(capsys):
    first = run(capsys, "classify", "sl3r", "--seed", "5")[1]
    again = run(capsys, "classify", "sl3r", "--seed", "5")[1]
    other = run(capsys, "classify", "sl3r", "--seed", "6")[1]
    assert first == again and first != other


def test_env_seed(capsys, monkeypatch):
    explicit = run(capsys, "classify", "su31", "--seed", "8")[1]
    monkeypatch.setenv("POLARFOL_SEED", "8")
    assert run(capsys, "classify", "su31")[1] == explicit
    monkeypatch.setenv("POLARFOL_SEED", "eight")
    code, _, err = run(capsys, "classify", "su31")
    assert code == 2 and "POLARFOL_SEED" in err


def test_verify_su21_case_d(capsys):
    code, out, _ = run(capsys, "verify", "su21", "--case", "D", "--root", "1")
    r = json.loads(out)["report"]
    assert code == 0
    assert r["is_polar"] is True and r["is_hyperpolar"] is False
    assert r["section_curvature"] == "-1/12"
    assert r["mean_curvature_coeff"] == "3"
    assert r["spec"]["alpha"] == 1


def test_verify_case_e_needs_plane(capsys):
    code, _, err = run(capsys, "verify", "sl3r", "--case", "E", "--root", "1")
    assert code == 2 and "no abelian plane in g_alpha" in err


def test_verify_case_c_not_orthogonal(capsys):
    code, _, err = run(capsys, "verify", "sl3r", "--case", "C", "--root", "1", "--root2", "2")
    assert code == 2 and "simple roots not orthogonal" in err


@pytest.mark.parametrize(
    "argv, message",
    [
        (["verify", "sl3r", "--case", "D"], "needs --root"),
        (["verify", "sl3r", "--case", "D", "--root", "3"], "between 1 and 2"),
        (["verify", "sl2r", "--case", "A"], "rank >= 2"),
        (["verify", "so25", "--case", "E", "--root", "2", "--t", "x"], "rationals"),
        (["verify", "su21", "--case", "E", "--root", "1"], "no abelian plane"),
    ],
)
def test_verify_input_errors(capsys, argv, message):
    code, _, err = run(capsys, *argv)
    assert code == 2 and message in err


def test_verify_case_e_orbit_parameters(capsys):
    code, out, _ = run(capsys, "verify", "so25", "--case", "E", "--root", "2", "--t", "1/3", "--t=-2")
    r = json.loads(out)["report"]
    assert code == 0
    assert [c["t"] for c in r["orbit_checks"]] == ["1/3", "-2"]
    assert all(c["equal"] and not c["minimal"] for c in r["orbit_checks"])


def test_verify_seeded_choice(capsys):
    code, out, _ = run(capsys, "verify", "su31", "--case", "E", "--root", "1", "--seed", "4")
    r = json.loads(out)["report"]
    assert code == 0 and r["spec"]["choice"] == "random:4:0"


def test_certification_failure_exit_code(capsys, monkeypatch):
    real = cli.verify

    def broken(*args, **kw):
        return dataclasses.replace(real(*args, **kw), is_polar=False)

    monkeypatch.setattr(cli, "verify", broken)
    code, out, err = run(capsys, "verify", "su21", "--case", "D", "--root", "1")
    assert code == 1 and "certification failed" in err
    assert json.loads(out)["report"]["certified"] is False


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polarfol", "info", "sl2r"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["info"]["dim"] == 3
