"""Acceptance criteria, one test each, at the stated sizes and tolerances.

A per-criterion PASS/FAIL summary is printed at the end of the pytest run.
"""

import io
import math
import time
from contextlib import redirect_stdout

import numpy as np
import pytest

from oracles import brute_bias
from xorgames import inequalities as lab
from xorgames.classical import ClassicalStrategy, classical_bias_exact, classical_bias_heuristic, classical_value
from xorgames.cli import run
from xorgames.comm import (
    cliquewise_quantum_bound,
    gen_disc_bound,
    nof_discrepancy_direct,
    nof_lift,
)
from xorgames.entanglement import partial_ghz_pairing, partial_ghz_state, schmidt_decompose, schmidt_state
from xorgames.games import chsh, gip, mermin, random_game
from xorgames.quantum import evaluate_strategy, ghz_bias_seesaw, tensor_strategies, tsirelson_bias
from xorgames.tensor_core import xor_repeat

K_C = 1.40491


def violations(reports):
    return [r.line() for r in reports if not r.passed]


def test_criterion_01_named_game_values():
    t = time.perf_counter()
    value, _ = classical_bias_exact(chsh().tensor)
    assert value == 0.5 and time.perf_counter() - t < 1.0

    t = time.perf_counter()
    value, _ = tsirelson_bias(chsh().tensor, restarts=8)
    assert abs(value - 0.7071068) <= 1e-6 and time.perf_counter() - t < 5.0

    assert classical_bias_exact(mermin().tensor)[0] == 0.5
    assert ghz_bias_seesaw(mermin().tensor, 2)[0] >= 1 - 1e-6


def test_criterion_02_schmidt_gap_suite():
    t = time.perf_counter()
    reports = lab.schmidt_gap_suite(500, seed=2024, n_max=4, d_max=4)
    elapsed = time.perf_counter() - t
    assert len(reports) == 500
    assert all(r.const == 4 * K_C for r in reports)
    assert violations(reports) == []
    assert elapsed < 300, f"suite took {elapsed:.1f}s"


def test_criterion_03_cliquewise_suite():
    reports = lab.qc_gap_suite(200, seed=2024, model=lab.CLIQUEWISE, n=2, d=2)
    assert len(reports) == 200
    assert all(r.const == pytest.approx(8 * K_C**4) for r in reports)
    assert violations(reports) == []


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("variant", ["MIXED", "REAL", "COMPLEX"])
def test_criterion_04_tonge_suites(N, variant):
    reports = lab.verify_tonge(N, 4, 4, 500, seed=2024, variant=variant)
    expected = 2 ** ((3 * N - 5) / 2) * K_C if variant == "MIXED" else lab.CONSTANTS.tonge_field_matched(N, variant)
    assert all(r.const == pytest.approx(expected) for r in reports)
    assert violations(reports) == []


def test_criterion_05_littlewood_extended():
    reports = lab.verify_littlewood(6, 6, 500, seed=2024, variant=lab.COMPLEX_PM)
    assert all(r.const == 2 * math.sqrt(2) and r.rhs_exact for r in reports)
    assert violations(reports) == []


def test_criterion_06_khintchine():
    reports = lab.verify_khintchine(1000, seed=2024, n_max=12)
    assert all(r.rhs >= 1 / math.sqrt(2) - 1e-12 for r in reports)
    assert violations(reports) == []
    assert lab.khintchine_ratio([1, 1]) == 1 / math.sqrt(2)


def test_criterion_07_schmidt_decomposition():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        d = int(rng.integers(1, 17))
        a = rng.random(d)
        a /= np.linalg.norm(a)
        dec = schmidt_decompose(a)
        N = 2 if d > 8 else 3
        expected = schmidt_state(a[dec.order], N).ravel().real
        assert np.max(np.abs(dec.reconstruct(N) - expected)) <= 1e-12
        assert dec.norm_residual() <= 1e-9
    for i in range(1, 9):
        for j in range(1, 9):
            assert partial_ghz_state(i, 8, 3) @ partial_ghz_state(j, 8, 3) == partial_ghz_pairing(i, j)


def test_criterion_08_structural_identities():
    phi = lab.verify_phi(500, seed=2024, d=2, e_max=3)
    assert max(r.lhs for r in phi) <= 1e-10 and violations(phi) == []
    graph = lab.graph_identity_suite(100, seed=2024, q_max=8)
    assert max(r.lhs for r in graph) <= 1e-10 and violations(graph) == []


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_criterion_09_no_xor_lemma(ell):
    game = xor_repeat(mermin(), ell)
    M = game.tensor
    # product lifting of the best single-copy strategy
    _, w = classical_bias_exact(mermin().tensor)
    lifted = []
    for s in w.signs:
        v = np.ones(1)
        for _ in range(ell):
            v = np.kron(v, s)
        lifted.append(v.astype(np.int8))
    assert abs(classical_value(M, ClassicalStrategy(tuple(lifted)))) >= 0.5**ell - 1e-12

    assert ghz_bias_seesaw(M, 2**ell, restarts=8, seed=0)[0] >= 1 - 1e-5

    heuristic, _ = classical_bias_heuristic(M, restarts=8, seed=0)
    assert heuristic >= 1 / (4 * K_C)
    if ell <= 2:
        exact, _ = classical_bias_exact(M)
        assert exact >= heuristic - 1e-12 and exact >= 1 / (4 * K_C)


def test_criterion_10_entangled_multiplicativity_witness():
    _, s = ghz_bias_seesaw(chsh().tensor, 2, restarts=8, tol=1e-15)
    both = tensor_strategies(s, s)
    both.validate()
    assert abs(evaluate_strategy(xor_repeat(chsh(), 2).tensor, both) - 0.5) <= 1e-8


def test_criterion_11_communication_bounds():
    g = chsh()
    assert gen_disc_bound(g.sign, g.sign, g.dist, 0).raw == 1.0

    for seed in range(3):
        f = random_game(3, 2, seed)
        fl, pl = nof_lift(f)
        assert classical_bias_exact(fl * pl)[0] == pytest.approx(nof_discrepancy_direct(f.sign, f.dist), abs=1e-12)
    fl, pl = nof_lift(mermin())
    assert brute_bias(fl * pl) == pytest.approx(nof_discrepancy_direct(mermin().sign, mermin().dist))

    for game, k in [(chsh(), 1), (gip(2, 3), 2), (mermin(), 4)]:
        N = game.n_players
        beta = brute_bias(game.tensor)
        rec = cliquewise_quantum_bound(game.sign, None, game.dist, 0, k=k, N=N)
        constant = 3 * (k + N * N) * N / 4
        assert rec.additive_constant == constant
        assert rec.raw == pytest.approx(0.5 * math.log2(1.0 / beta) - constant, abs=1e-12)
        assert rec.bound == max(0.0, rec.raw)


def test_criterion_12_q_algebra():
    reports = lab.q_algebra_suite(200, seed=2024, N_max=3, n_max=2, m_max=4)
    for r in reports:
        N = int(r.sizes.split()[0][2:])
        assert r.const == pytest.approx(1.0 if N == 1 else 2 ** ((3 * N - 5) / 2) * K_C)
    assert violations(reports) == []


SUITE_ARGS = [
    ["--suite", "tonge", "--players", "3", "--n", "3", "--dim", "3"],
    ["--suite", "tonge", "--players", "2", "--variant", "real"],
    ["--suite", "tonge", "--players", "2", "--variant", "complex"],
    ["--suite", "littlewood"],
    ["--suite", "littlewood", "--variant", "field-matched"],
    ["--suite", "khintchine"],
    ["--suite", "qcgap", "--model", "schmidt"],
    ["--suite", "qcgap", "--model", "ghz"],
    ["--suite", "qcgap", "--model", "cliquewise"],
    ["--suite", "qalgebra"],
    ["--suite", "graphstate", "--n", "2"],
    ["--suite", "phi"],
    ["--suite", "graphid"],
    ["--suite", "schmidtgap"],
]


def _cli_output(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue().encode()


def test_criterion_13_determinism(monkeypatch):
    for extra in SUITE_ARGS:
        argv = ["verify", "--trials", "12", "--seed", "99"] + extra
        code, first = _cli_output(argv)
        assert code == 0
        monkeypatch.setenv("XORGAMES_THREADS", "1")
        assert _cli_output(argv) == (0, first)
        monkeypatch.setenv("XORGAMES_THREADS", "3")
        assert _cli_output(argv) == (0, first)
        monkeypatch.delenv("XORGAMES_THREADS")
