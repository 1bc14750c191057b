import numpy as np
import pytest

from oracles import bias_by_play, brute_bias, gip_oracle
from xorgames.classical import classical_bias_exact
from xorgames.errors import CapExceededError, UsageError
from xorgames.games import chsh, gip, make_game, mermin, random_game

# values frozen from brute-force enumeration over all strategies
GIP3_BIAS = {1: 0.75, 2: 0.5625}


def test_chsh_bias_by_playing_all_strategies():
    g = chsh()
    best = max(
        abs(bias_by_play(g.sign, g.dist, [a, b]))
        for a in [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        for b in [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    )
    assert best == 0.5


def test_mermin_promise_and_signs():
    g = mermin()
    assert g.dist[0, 0, 0] == 0.25 and g.sign[0, 0, 0] == 1
    for x, y, z in np.ndindex(2, 2, 2):
        if (x + y + z) % 2:
            assert g.dist[x, y, z] == 0 and g.sign[x, y, z] == 1
        elif (x, y, z) != (0, 0, 0):
            assert g.sign[x, y, z] == -1
    assert brute_bias(g.tensor) == 0.5


@pytest.mark.parametrize("n,N", [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)])
def test_gip_matches_bit_string_oracle(n, N):
    g = gip(n, N)
    assert np.array_equal(g.sign, gip_oracle(n, N))
    assert np.allclose(g.dist, 1 / 2 ** (n * N))


@pytest.mark.parametrize("n", [1, 2])
def test_gip_three_player_bias_frozen(n):
    B = gip(n, 3).tensor
    assert brute_bias(B) == pytest.approx(GIP3_BIAS[n], abs=1e-15)
    assert classical_bias_exact(B)[0] == pytest.approx(GIP3_BIAS[n], abs=1e-15)


def test_gip_cap():
    with pytest.raises(CapExceededError):
        gip(9, 3)


def test_random_game_is_seeded():
    a, b = random_game(3, 2, 5), random_game(3, 2, 5)
    assert a.same_as(b)
    assert not a.same_as(random_game(3, 2, 6))


def test_random_game_sparse_support():
    g = random_game(2, 3, 1, support=4)
    assert np.count_nonzero(g.dist) == 4
    assert np.allclose(g.dist[g.dist > 0], 0.25)
    with pytest.raises(ValueError):
        random_game(2, 2, 0, support=5)


def test_make_game_dispatch():
    assert make_game("CHSH").same_as(chsh())
    assert make_game("gip", n=2, players=3).same_as(gip(2, 3))
    assert make_game("random", players=2, n=3, seed=4).same_as(random_game(2, 3, 4))
    with pytest.raises(UsageError):
        make_game("magic-square")
