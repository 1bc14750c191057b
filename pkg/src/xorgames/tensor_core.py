"""Dense N-tensors and the XOR game representation.

Tensors are plain numpy arrays: the order is ``ndim``, the dims are
``shape`` and the field tag is the dtype kind (real floating point vs
complex).  Multi-indices flatten row-major, so the first player's question
is the most significant digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import config
from .errors import CapExceededError, FormatError, ShapeError

REAL = "REAL"
COMPLEX = "COMPLEX"

DIST_TOL = 1e-9


def field_of(tensor) -> str:
    return COMPLEX if np.iscomplexobj(tensor) else REAL


def as_tensor(values) -> np.ndarray:
    """Coerce to a float64 or complex128 array; complex input keeps its tag."""
    arr = np.asarray(values)
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128)
    return arr.astype(np.float64)


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


def entrywise_product(a, b) -> np.ndarray:
    a, b = as_tensor(a), as_tensor(b)
    _check_same_shape(a, b)
    return a * b


def inner_product(a, b):
    """Bilinear pairing sum_I a[I] b[I] (no complex conjugation)."""
    a, b = as_tensor(a), as_tensor(b)
    _check_same_shape(a, b)
    out = np.sum(a * b)
    return complex(out) if np.iscomplexobj(out) else float(out)


def interleaved_outer(a, b) -> np.ndarray:
    """Outer product with axis k of the result indexing pairs (a_k, b_k).

    The pair (i, i') flattens to ``i * b.shape[k] + i'``; this is the
    question relabeling used by XOR repetition.
    """
    a, b = np.asarray(a), np.asarray(b)
    if a.ndim != b.ndim:
        raise ShapeError(f"order mismatch: {a.ndim} vs {b.ndim}")
    n = a.ndim
    outer = np.multiply.outer(a, b)
    perm = [ax for k in range(n) for ax in (k, n + k)]
    shape = tuple(p * q for p, q in zip(a.shape, b.shape))
    return outer.transpose(perm).reshape(shape)


@dataclass(frozen=True, eq=False)
class Game:
    """An XOR game: sign tensor plus question distribution on the same index set."""

    sign: np.ndarray
    dist: np.ndarray

    def __post_init__(self):
        sign = np.asarray(self.sign)
        dist = np.asarray(self.dist, dtype=np.float64)
        if sign.shape != dist.shape:
            raise ShapeError(f"sign tensor {sign.shape} and distribution {dist.shape} differ")
        if sign.ndim < 1:
            raise ShapeError("a game needs at least one player")
        if not np.all((sign == 1) | (sign == -1)):
            raise ValueError("sign tensor entries must be +1 or -1")
        if np.any(dist < 0) or not np.all(np.isfinite(dist)):
            raise ValueError("distribution weights must be finite and nonnegative")
        total = float(dist.sum())
        if abs(total - 1.0) > DIST_TOL:
            raise ValueError(f"distribution sums to {total!r}, not 1 within {DIST_TOL}")
        # skip weights already normalized up to summation rounding, so that
        # loading a written game reproduces it bit for bit
        if abs(total - 1.0) > dist.size * np.finfo(np.float64).eps:
            dist = dist / total
        else:
            dist = dist.copy()
        sign = sign.astype(np.int8)
        sign.setflags(write=False)
        dist.setflags(write=False)
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "dist", dist)

    @property
    def n_players(self) -> int:
        return self.sign.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return self.sign.shape

    @property
    def tensor(self) -> np.ndarray:
        """The effective tensor A∘π whose norms are the biases."""
        return self.sign * self.dist

    def same_as(self, other: "Game") -> bool:
        return (
            self.dims == other.dims
            and np.array_equal(self.sign, other.sign)
            and np.array_equal(self.dist, other.dist)
        )


def _repeat_cap_check(dims, times):
    bits = times * sum(math.log2(n) for n in dims)
    if bits > config.cap_entries_log2():
        raise CapExceededError(
            f"{times}-fold repetition needs 2^{bits:.1f} entries, cap is 2^{config.cap_entries_log2()}"
        )


def xor_repeat(game: Game, times: int) -> Game:
    """The ``times``-fold XOR repetition G^{⊗ℓ}.

    Each player's question becomes an ℓ-tuple flattened lexicographically
    (first repetition most significant); signs and weights multiply.
    """
    if times < 1:
        raise ValueError("repetition count must be positive")
    _repeat_cap_check(game.dims, times)
    sign, dist = game.sign, game.dist
    for _ in range(times - 1):
        sign = interleaved_outer(sign, game.sign)
        dist = interleaved_outer(dist, game.dist)
    return Game(sign, dist)


def xor_product(g1: Game, g2: Game) -> Game:
    _repeat_cap_check(tuple(a * b for a, b in zip(g1.dims, g2.dims)), 1)
    return Game(interleaved_outer(g1.sign, g2.sign), interleaved_outer(g1.dist, g2.dist))


# ---------------------------------------------------------------------------
# game file format


def format_game(game: Game) -> str:
    lines = [
        "xorgame v1",
        f"players {game.n_players}",
        "questions " + " ".join(str(n) for n in game.dims),
    ]
    for idx in np.ndindex(*game.dims):
        w = float(game.dist[idx])
        s = int(game.sign[idx])
        # off-support cells are written only when they deviate from the +1 default
        if w == 0.0 and s == 1:
            continue
        lines.append("entry " + " ".join(map(str, idx)) + f" {s:+d} {w!r}")
    return "\n".join(lines) + "\n"


def parse_game(text: str) -> Game:
    lines = [ln.strip() for ln in text.split("\n")]
    lines = [ln for ln in lines if ln]
    if len(lines) < 3 or lines[0] != "xorgame v1":
        raise FormatError("missing 'xorgame v1' header")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "players":
        raise FormatError("expected 'players N' on line 2")
    try:
        n_players = int(head[1])
        qline = lines[2].split()
        if qline[0] != "questions":
            raise FormatError("expected 'questions n_1 ... n_N' on line 3")
        dims = tuple(int(tok) for tok in qline[1:])
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if n_players < 1 or len(dims) != n_players or any(n < 1 for n in dims):
        raise FormatError("question counts do not match the player count")
    sign = np.ones(dims, dtype=np.int8)
    dist = np.zeros(dims)
    seen = set()
    for ln in lines[3:]:
        toks = ln.split()
        if toks[0] != "entry" or len(toks) != n_players + 3:
            raise FormatError(f"bad entry line: {ln!r}")
        try:
            idx = tuple(int(t) for t in toks[1 : n_players + 1])
            s = int(toks[n_players + 1])
            w = float(toks[n_players + 2])
        except ValueError:
            raise FormatError(f"bad entry line: {ln!r}") from None
        if any(not 0 <= i < n for i, n in zip(idx, dims)):
            raise FormatError(f"index out of range: {ln!r}")
        if s not in (1, -1):
            raise FormatError(f"sign must be +1 or -1: {ln!r}")
        if idx in seen:
            raise FormatError(f"duplicate index tuple {idx}")
        seen.add(idx)
        sign[idx] = s
        dist[idx] = w
    try:
        return Game(sign, dist)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_game(path) -> Game:
    return parse_game(Path(path).read_text())


def write_game(game: Game, path) -> None:
    Path(path).write_text(format_game(game))
