import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from xorgames.cli import run
from xorgames.games import chsh, mermin
from xorgames.tensor_core import read_game, write_game, xor_repeat


@pytest.fixture
def games(tmp_path):
    paths = {}
    for name, g in [("chsh", chsh()), ("mermin", mermin())]:
        paths[name] = tmp_path / f"{name}.game"
        write_game(g, paths[name])
    return paths


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_bias_classical_exact(games, capsys):
    code, out, _ = call(capsys, "bias", "classical", games["mermin"], "--exact")
    assert code == 0 and out.startswith("value=0.5 ")


def test_bias_classical_heuristic(games, capsys):
    code, out, _ = call(capsys, "bias", "classical", games["chsh"], "--heuristic", "--restarts", "2")
    assert code == 0 and "value=0.5 " in out and "mode=heuristic" in out


@pytest.mark.parametrize("model", ["tsirelson", "ghz", "schmidt", "gamma-star"])
def test_bias_quantum_chsh(games, capsys, model):
    code, out, _ = call(capsys, "bias", "quantum", games["chsh"], "--model", model, "--restarts", "4")
    assert code == 0
    value = float(out.split()[0].split("=")[1])
    assert value == pytest.approx(2**-0.5, abs=1e-6)


def test_bias_quantum_cliquewise_and_schmidt_alpha(games, capsys, tmp_path):
    h = tmp_path / "h.txt"
    h.write_text("hypergraph v1\nvertices 3\nedge 0 1 2\n")
    code, out, _ = call(capsys, "bias", "quantum", games["mermin"], "--model", "cliquewise", "--hypergraph", h)
    assert code == 0 and float(out.split()[0][6:]) == pytest.approx(1.0)
    code, out, _ = call(capsys, "bias", "quantum", games["mermin"], "--model", "schmidt", "--alpha", "1,0")
    assert code == 0 and float(out.split()[0][6:]) == pytest.approx(0.5)


def test_game_make_and_repeat(tmp_path, capsys):
    out_path = tmp_path / "g.game"
    code, _, _ = call(capsys, "game", "make", "gip", "--n", "2", "--players", "3", "--out", out_path)
    assert code == 0 and read_game(out_path).dims == (4, 4, 4)
    rep = tmp_path / "r.game"
    write_game(chsh(), tmp_path / "c.game")
    assert call(capsys, "repeat", tmp_path / "c.game", "--times", "2", "--out", rep)[0] == 0
    assert read_game(rep).same_as(xor_repeat(chsh(), 2))
    code, out, _ = call(capsys, "game", "make", "random", "--players", "2", "--n", "3", "--seed", "1", "--support", "4")
    assert code == 0 and out.count("entry") >= 4


def test_verify_khintchine(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "khintchine", "--trials", "1000", "--seed", "7")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1001
    assert lines[-1] == "summary=1 suite=khintchine trials=1000 violations=0"
    assert all(line.endswith("pass=1") for line in lines[:-1])


@pytest.mark.parametrize(
    "extra",
    [
        ["--suite", "tonge", "--players", "2", "--variant", "real"],
        ["--suite", "tonge", "--variant", "complex", "--n", "3", "--dim", "2"],
        ["--suite", "littlewood"],
        ["--suite", "littlewood", "--variant", "field-matched"],
        ["--suite", "qcgap", "--model", "ghz"],
        ["--suite", "qcgap", "--model", "cliquewise"],
        ["--suite", "qalgebra"],
        ["--suite", "graphstate", "--n", "2"],
        ["--suite", "phi"],
        ["--suite", "graphid"],
        ["--suite", "schmidtgap", "--n", "3", "--dim", "2"],
    ],
)
def test_verify_suites_pass_and_repeat_identically(capsys, extra):
    argv = ["verify", "--trials", "4", "--seed", "3"] + extra
    code, out, _ = call(capsys, *argv)
    assert code == 0, out
    assert call(capsys, *argv)[1] == out


def test_verify_graph_file(capsys, tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("graph v1\nvertices 4\nedge 0 1\nedge 1 2\nedge 2 3\nparts 0,1|2|3\n")
    code, out, _ = call(capsys, "verify", "--suite", "graphstate", "--graph", g, "--trials", "2", "--n", "2")
    assert code == 0 and sum(line.startswith("suite=graphstate trial=") for line in out.splitlines()) == 2


def test_verify_violation_exits_one(capsys, monkeypatch):
    from xorgames import inequalities as lab

    monkeypatch.setattr(lab.CONSTANTS.__class__, "schmidt_gap", lambda self, n: 0.0)
    code, out, _ = call(capsys, "verify", "--suite", "qalgebra", "--trials", "3")
    assert code == 1 and "pass=0" in out


def test_ccbound(games, capsys):
    code, out, _ = call(capsys, "ccbound", games["chsh"], "--eps", "0")
    assert code == 0 and "raw=1.0 bound=1.0" in out
    code, out, _ = call(capsys, "ccbound", games["chsh"], "--eps", "0", "--quantum", "--cliques", "1")
    assert "raw=-7.0 bound=0.0 additive_constant=7.5" in out
    code, out, _ = call(capsys, "ccbound", games["chsh"], "--against", games["chsh"], "--eps", "0.5")
    assert code == 0 and "bound=none" in out
    code, out, _ = call(capsys, "ccbound", games["mermin"], "--eps", "0", "--bns", "1")
    assert "bns=0.015625" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bias"],
        ["bias", "classical"],
        ["verify", "--suite", "nope"],
        ["verify", "--suite", "tonge", "--trials", "0"],
        ["verify", "--suite", "tonge", "--trials", "x"],
        ["verify", "--suite", "tonge", "--variant", "octonion"],
        ["verify", "--suite", "khintchine", "--unknown-flag"],
        ["ccbound", "missing.game", "--eps", "0"],
        ["ccbound", "missing.game", "--eps", "-1"],
        ["bias", "classical", "missing.game", "--exact", "--heuristic"],
        ["game", "make", "magic"],
        ["repeat", "missing.game", "--times", "2"],
        ["bias", "quantum", "missing.game", "--model", "ghz", "--alpha", "a,b"],
    ],
)
def test_usage_errors_exit_two_with_one_line(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert len(err.strip().splitlines()) == 1 and err.startswith("error: ")


def test_cap_error_exits_two(games, capsys, monkeypatch):
    monkeypatch.setenv("XORGAMES_CAP_BITS", "3")
    code, _, err = call(capsys, "bias", "classical", games["mermin"], "--exact")
    assert code == 2 and "cap" in err


def test_model_mismatch_exits_two(games, capsys):
    code, _, err = call(capsys, "bias", "quantum", games["mermin"], "--model", "tsirelson")
    assert code == 2


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(text=st.one_of(
    st.text(max_size=80),
    st.lists(
        st.sampled_from(["xorgame v1", "players 2", "players 1", "questions 2 2", "questions 2", "entry 0 0 +1 1",
                         "entry 0 +1 0.5", "entry 1 -1 0.5", "entry 0 0 -1 0.25", "entry 9 9 +1 1", "garbage"]),
        max_size=6,
    ).map("\n".join),
))
def test_malformed_game_files_never_crash(tmp_path, capsys, text):
    path = tmp_path / "fuzz.game"
    path.write_text(text)
    code, out, err = call(capsys, "bias", "classical", path, "--exact")
    if code == 0:
        assert out.startswith("value=")
    else:
        assert code == 2 and len(err.strip().splitlines()) == 1


def test_module_entry_point(games):
    proc = subprocess.run(
        [sys.executable, "-m", "xorgames", "bias", "classical", str(games["chsh"]), "--exact"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("value=0.5 ")


GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize(
    "name,argv",
    [
        ("khintchine_t20_s7.txt", ["--suite", "khintchine", "--trials", "20", "--seed", "7"]),
        ("littlewood_t20_s7.txt", ["--suite", "littlewood", "--trials", "20", "--seed", "7"]),
        ("qalgebra_t20_s7.txt", ["--suite", "qalgebra", "--trials", "20", "--seed", "7"]),
        ("tonge_mixed_t10_s7.txt", ["--suite", "tonge", "--trials", "10", "--seed", "7", "--n", "3", "--dim", "3"]),
    ],
)
def test_golden_reports(capsys, name, argv):
    code, out, _ = call(capsys, "verify", *argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text()
