"""Named XOR games and seeded random instances."""

from __future__ import annotations

import itertools

import numpy as np

from . import config
from .errors import CapExceededError, UsageError
from .tensor_core import Game


def chsh() -> Game:
    sign = np.array([[1, 1], [1, -1]])
    return Game(sign, np.full((2, 2), 0.25))


def mermin() -> Game:
    """Three-player GHZ game in XOR form.

    Questions are promised to have even parity; the target sign is
    (-1)^OR(x, y, z). Off-promise cells carry weight 0 and sign +1.
    """
    sign = np.ones((2, 2, 2), dtype=int)
    dist = np.zeros((2, 2, 2))
    for x, y, z in itertools.product((0, 1), repeat=3):
        if (x + y + z) % 2 == 0:
            dist[x, y, z] = 0.25
            sign[x, y, z] = -1 if (x or y or z) else 1
    return Game(sign, dist)


def gip(n: int, n_players: int) -> Game:
    """Generalized inner product: parity of the common intersection of n-bit strings.

    Question q of a player is the n-bit string whose bit b (most significant
    first) is ``(q >> (n - 1 - b)) & 1``.
    """
    if n < 1 or n_players < 1:
        raise ValueError("gip needs n >= 1 and at least one player")
    if n * n_players > config.cap_entries_log2():
        raise CapExceededError(f"gip({n},{n_players}) has 2^{n * n_players} entries")
    q = np.arange(2**n)
    common = np.full((2**n,) * n_players, 2**n - 1, dtype=np.int64)
    for k in range(n_players):
        shape = [1] * n_players
        shape[k] = -1
        common = common & q.reshape(shape)
    popcount = np.zeros_like(common)
    for b in range(n):
        popcount += (common >> b) & 1
    sign = np.where(popcount % 2 == 0, 1, -1)
    return Game(sign, np.full(sign.shape, 1.0 / sign.size))


def random_game(n_players: int, n, seed: int, support="full") -> Game:
    """Random signs, uniform weight on the chosen support.

    ``n`` is a per-player question count (int or sequence). ``support`` is
    ``"full"`` or an integer k for a uniformly chosen support of k cells.
    """
    dims = (n,) * n_players if np.isscalar(n) else tuple(n)
    if len(dims) != n_players:
        raise ValueError("need one question count per player")
    size = int(np.prod(dims))
    if np.log2(size) > config.cap_entries_log2():
        raise CapExceededError(f"random game with {size} entries exceeds cap")
    rng = np.random.default_rng(seed)
    sign = rng.choice(np.array([-1, 1]), size=dims)
    if support == "full":
        dist = np.full(dims, 1.0 / size)
    else:
        k = int(support)
        if not 1 <= k <= size:
            raise ValueError(f"sparse support size {k} outside [1, {size}]")
        cells = rng.choice(size, size=k, replace=False)
        flat = np.zeros(size)
        flat[cells] = 1.0 / k
        dist = flat.reshape(dims)
    return Game(sign, dist)


def make_game(name: str, **params) -> Game:
    """Dispatch on a game name: chsh, mermin, gip(n, players), random(players, n, seed)."""
    name = name.lower()
    if name == "chsh":
        return chsh()
    if name == "mermin":
        return mermin()
    if name == "gip":
        return gip(params.get("n", 1), params.get("players", 2))
    if name == "random":
        return random_game(
            params.get("players", 3), params.get("n", 2), params.get("seed", 0), params.get("support", "full")
        )
    raise UsageError(f"unknown game {name!r}")
