import os
import subprocess
import sys
from pathlib import Path

import pytest

from chowkit.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    return code, capsys.readouterr().out


def doc(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


GOLDEN = {
    ("chow", "line_p3.txt"): "command: chow\nn: 1\nk: 1\nr: 3\nform: u00*u11 - u01*u10\n",
    ("chow", "two_points_p2.txt"): "command: chow\nn: 0\nk: 2\nr: 2\nform: u00*u01 + 2*u00*u02\n",
    ("pushforward", "squaring.txt"): (
        "command: pushforward\nk: 2\nd: 2\n"
        "chow_form: v00^2*v11^2 - 2*v00*v01*v10*v11 + v01^2*v10^2\n"
        "root: v00*v11 - v01*v10\n"
    ),
    ("degree2", "veronese.txt"): "command: degree2\ndegree2: 2\n",
}


@pytest.mark.parametrize("cmd,fname", sorted(GOLDEN))
def test_golden_documents(capsys, cmd, fname):
    code, out = call(capsys, cmd, "--input", DATA / fname)
    assert code == 0
    assert out == GOLDEN[(cmd, fname)]


def test_power_test(capsys):
    code, out = call(capsys, "power-test", "--input", DATA / "det_squared.txt", "--d", 2)
    assert code == 0 and out == "command: power-test\npower: yes\nroot: u00*u11 - u01*u10\n"
    code, out = call(capsys, "power-test", "--input", DATA / "det_squared.txt", "--d", 4)
    assert code == 0 and doc(out)["power"] == "no"


def test_compose_and_eliminate(capsys):
    code, out = call(capsys, "compose", "--input", DATA / "squaring.txt", "--input", DATA / "swap.txt")
    assert code == 0 and doc(out)["generator"] == "x0^2*z0 - x1^2*z1"
    code, out = call(capsys, "eliminate", "--input", DATA / "binary_quadrics.txt", "--drop", "x", "--projective")
    assert code == 0 and doc(out)["generators"] == "1"
    code, out = call(capsys, "eliminate", "--input", DATA / "binary_quadrics.txt", "--drop", "x")
    assert code == 0 and doc(out)["generators"] == "0"


def test_bounds_report(capsys):
    code, out = call(capsys, "bounds", "--n", 1, "--rn", 3, "--volK", 2, "--N", 6, "--dprime", 6)
    d = doc(out)
    assert code == 0
    assert d["gamma_X"] == "12" and d["M_V"] == "6" and d["B"] == "huge"
    code, out = call(capsys, "bounds", "--n", 1, "--rn", 3, "--volK", 2, "--eps", "1/2", "--case", "map-eps")
    assert code == 0 and doc(out)["map_degree_bound"] == "4"
    code, out = call(capsys, "bounds", "--n", 1, "--rn", 3, "--volK", 2, "--case", "nef", "--intersections", "6,2")
    assert code == 0 and doc(out)["gamma_X"] == "12"


@pytest.mark.parametrize(
    "argv,code,kind",
    [
        (["chow", "--input", DATA / "missing.txt"], 2, "parse-error"),
        (["pushforward", "--input", DATA / "bad_graph.txt"], 3, "precondition-failure"),
        (["bounds", "--n", 1, "--rn", 3, "--volK", 2, "--case", "map-eps"], 3, "precondition-failure"),
        (["chow", "--input", DATA / "line_p3.txt", "--max-degree", 1], 4, "deadline-exceeded"),
        (["pushforward", "--input", DATA / "constant_map.txt"], 5, "not-principal"),
        (["degree2", "--input", DATA / "constant_map.txt"], 3, "precondition-failure"),
        (["chow", "--input", DATA / "plane_as_curve.txt"], 5, "zero-ideal"),
        (["frobnicate"], 2, "usage"),
    ],
)
def test_exit_codes(capsys, argv, code, kind):
    got, out = call(capsys, *argv)
    d = doc(out)
    assert got == code and d["exit_code"] == str(code)
    if kind:
        assert d["error"] == kind


def test_unstable_count_exit_code(capsys, monkeypatch):
    import chowkit.cli as cli
    from chowkit.errors import UnstableCount

    def flaky(*args, **kwargs):
        raise UnstableCount("generic slice counts disagree after 3 retries: [(2, 3)]")

    monkeypatch.setattr(cli, "second_degree", flaky)
    code, out = call(capsys, "degree2", "--input", DATA / "squaring.txt")
    assert code == 6 and doc(out)["error"] == "unstable-count"


def test_validate(capsys):
    code, out = call(capsys, "validate", "pushforward", "--input", DATA / "bad_graph.txt")
    assert code == 0 and doc(out)["diagnostic"] == "generator 2 not bihomogeneous"
    code, out = call(capsys, "validate", "bounds", "--n", 1, "--rn", 3, "--volK", 2, "--case", "map-eps")
    assert "needs --eps" in doc(out)["diagnostic"]
    code, out = call(capsys, "validate", "chow", "--input", DATA / "line_p3.txt")
    assert out == "job: chow\ndiagnostics: 0\n"
    code, out = call(capsys, "validate", "power-test", "--input", DATA / "det_squared.txt", "--d", 3)
    assert "does not divide" in doc(out)["diagnostic"]


def test_output_file_and_determinism(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.txt"
        assert run(["pushforward", "--input", str(DATA / "veronese.txt"), "--output", str(path), "--seed", "5"]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("path", sorted(DATA.glob("*.txt")), ids=lambda p: p.name)
def test_no_uncaught_failure_on_corpus(capsys, path):
    for cmd in ("chow", "pushforward", "degree2", "power-test", "validate"):
        argv = [cmd, "--input", path] if cmd != "validate" else [cmd, "chow", "--input", path]
        if cmd == "power-test":
            argv += ["--d", 2]
        code, out = call(capsys, *argv)
        assert code in (0, 2, 3, 4, 5, 6)


def test_console_entry_point():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "chowkit", "chow", "--input", str(DATA / "line_p3.txt")],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0
    assert proc.stdout.endswith("form: u00*u11 - u01*u10\n")
