"""Classical bias and the scalar multilinear norms ‖M‖_{∞,R}, ‖M‖_{∞,C}.

Exactness of the real norm by sign enumeration: the form is affine in each
scalar variable separately, so its modulus is convex in each variable and
the maximum over the product of intervals [-1, 1] sits on a vertex.  The
last player never needs enumerating: for fixed other players the best
answer to question i is the sign of its marginal coefficient and the value
is the sum of the moduli of those coefficients.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import CapExceededError, ShapeError, UsageError
from .tensor_core import COMPLEX, REAL, as_tensor

EXACT = "EXACT"
HEURISTIC = "HEURISTIC"

# scalar budget for one enumeration chunk
_CHUNK_BUDGET = 1 << 22


@dataclass(frozen=True, eq=False)
class ClassicalStrategy:
    """One ±1 answer per question per player."""

    signs: tuple

    def __post_init__(self):
        signs = []
        for s in self.signs:
            s = np.asarray(s, dtype=np.int8)
            if s.ndim != 1 or not np.all((s == 1) | (s == -1)):
                raise ValueError("each player needs a 1-d vector of ±1 answers")
            s.setflags(write=False)
            signs.append(s)
        object.__setattr__(self, "signs", tuple(signs))

    def __str__(self):
        return "/".join("".join("+" if v > 0 else "-" for v in s) for s in self.signs)

    def __eq__(self, other):
        return len(self.signs) == len(other.signs) and all(
            np.array_equal(a, b) for a, b in zip(self.signs, other.signs)
        )


@dataclass(frozen=True, eq=False)
class PhaseStrategy:
    """Unit-disc scalars per question per player (complex norm witnesses)."""

    phases: tuple


def contract_except(tensor, vectors, skip=None):
    """Contract axis l of ``tensor`` with ``vectors[l]`` for every l != skip.

    Returns a scalar when ``skip`` is None, else the marginal vector over the
    skipped axis.
    """
    out = tensor
    for axis in reversed(range(tensor.ndim)):
        if axis == skip:
            continue
        out = np.tensordot(out, vectors[axis], axes=([axis], [0]))
    return out


def _check_strategy_shape(M, vectors):
    if len(vectors) != M.ndim or any(len(v) != n for v, n in zip(vectors, M.shape)):
        raise ShapeError(f"strategy shape {[len(v) for v in vectors]} does not match tensor {M.shape}")


def classical_value(M, strategy: ClassicalStrategy):
    """Signed value sum_I M[I] x_1(i_1)...x_N(i_N)."""
    M = as_tensor(M)
    vecs = [s.astype(np.float64) for s in strategy.signs]
    _check_strategy_shape(M, vecs)
    out = contract_except(M, vecs)
    return complex(out) if np.iscomplexobj(out) else float(out)


def sign_table(n: int) -> np.ndarray:
    """All 2^n sign vectors in lexicographic order with +1 before -1."""
    rows = np.arange(2**n)[:, None]
    bits = (rows >> np.arange(n - 1, -1, -1)) & 1
    return (1 - 2 * bits).astype(np.float64)


def _best_last_player(c):
    """Lexicographically smallest maximizer of |sum_i c_i x_i| for real c."""
    x = np.where(c < 0, -1, 1).astype(np.int8)
    nz = np.flatnonzero(c)
    if nz.size and x[nz[0]] < 0:
        x = np.where(c == 0, 1, -x).astype(np.int8)
    return x


def _enumerate_chunk(M, tables, start, stop):
    """Values sum|marginal| for player-0 assignments start..stop-1 (all others enumerated)."""
    T = np.tensordot(tables[0][start:stop], M, axes=([1], [0]))
    for table in tables[1:]:
        T = np.tensordot(T, table, axes=([1], [1]))
    # T: (chunk, n_last, 2^{n_1}, ..., 2^{n_{N-2}})
    vals = np.abs(T).sum(axis=1)
    return vals.reshape(stop - start, -1)


def classical_bias_exact(M, cap_bits=None):
    """Exact classical bias β(M) = ‖M‖_{∞,R} by enumeration.

    :param M: real or complex N-tensor.
    :param cap_bits: limit on the total number of sign bits sum_k n_k.
    :return: ``(value, witness)``; ties go to the lexicographically smallest
        assignment (player 1 first, +1 before -1).
    """
    M = as_tensor(M)
    cap = config.cap_bits() if cap_bits is None else cap_bits
    if sum(M.shape) > cap:
        raise CapExceededError(f"enumeration over {sum(M.shape)} sign bits exceeds cap {cap}")
    complex_input = np.iscomplexobj(M)
    if complex_input:
        # a dummy single-question last player turns the closed form into |.|
        M = M[..., None]
    if M.ndim == 1:
        x = _best_last_player(M.real) if not complex_input else np.ones(1, np.int8)
        strategy = ClassicalStrategy((x,))
        return abs(classical_value(M, strategy)), strategy

    prefix_dims = M.shape[:-1]
    tables = [sign_table(n) for n in prefix_dims]
    n0 = 2 ** prefix_dims[0]
    per_row = M.shape[-1] * int(np.prod([2**n for n in prefix_dims[1:]], dtype=np.int64))
    chunk = max(1, min(n0, _CHUNK_BUDGET // max(per_row, 1)))
    bounds = [(s, min(s + chunk, n0)) for s in range(0, n0, chunk)]

    def work(bound):
        vals = _enumerate_chunk(M, tables, *bound)
        return vals.max(), vals

    workers = config.threads()
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(work, bounds))
    else:
        results = [work(b) for b in bounds]

    best = max(r[0] for r in results)
    tol = 1e-12 * max(1.0, best)
    # merge: first chunk (in lexicographic order) holding a value within tol of the max
    for (start, _), (_, vals) in zip(bounds, results):
        hits = np.flatnonzero(vals.ravel() >= best - tol)
        if hits.size:
            flat = start * vals.shape[1] + int(hits[0])
            break
    idx = np.unravel_index(flat, [2**n for n in prefix_dims])
    signs = [tables[k][i].astype(np.int8) for k, i in enumerate(idx)]
    marginal = contract_except(M, [s.astype(np.float64) for s in signs] + [None], skip=M.ndim - 1)
    if complex_input:
        last = np.ones(1, np.int8)
    else:
        last = _best_last_player(marginal)
    strategy = ClassicalStrategy(tuple(signs) + (last,))
    if complex_input:
        strategy = ClassicalStrategy(strategy.signs[:-1])
        M = M[..., 0]
    return abs(classical_value(M, strategy)), strategy


def classical_bias_heuristic(M, restarts=8, seed=0, max_sweeps=1000):
    """Lower bound on β(M) by best-response sign ascent from random starts.

    Each restart r draws signs from ``default_rng(seed + r)`` and then sets
    every player's answers to the signs of their marginal coefficients
    (zero keeps the current answer) until a full sweep changes nothing.
    """
    M = as_tensor(M)
    if np.iscomplexobj(M):
        raise UsageError("the sign heuristic handles real tensors only")
    best_val, best_strategy = -1.0, None
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        x = [rng.choice(np.array([-1.0, 1.0]), size=n) for n in M.shape]
        for _ in range(max_sweeps):
            changed = False
            for k in range(M.ndim):
                c = contract_except(M, x, skip=k)
                new = np.where(c > 0, 1.0, np.where(c < 0, -1.0, x[k]))
                if not np.array_equal(new, x[k]):
                    changed = True
                    x[k] = new
            if not changed:
                break
        strategy = ClassicalStrategy(tuple(v.astype(np.int8) for v in x))
        val = abs(classical_value(M, strategy))
        if val > best_val:
            best_val, best_strategy = val, strategy
    return best_val, best_strategy


def complex_norm_heuristic(M, restarts=8, seed=0, max_sweeps=2000, tol=1e-13):
    """Lower bound on ‖M‖_{∞,C} by alternating phase ascent.

    With the other players fixed, the best unit-disc answer to question i is
    the conjugate phase of its marginal coefficient.
    """
    M = as_tensor(M).astype(np.complex128)
    best_val, best_phases = -1.0, None
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        phi = [np.exp(2j * np.pi * rng.random(n)) for n in M.shape]
        val = abs(contract_except(M, phi))
        for _ in range(max_sweeps):
            for k in range(M.ndim):
                c = contract_except(M, phi, skip=k)
                mod = np.abs(c)
                phi[k] = np.where(mod > 0, np.conj(c) / np.where(mod > 0, mod, 1.0), phi[k])
            new_val = abs(contract_except(M, phi))
            if new_val < val - 1e-12 * max(1.0, val):
                raise AssertionError("phase ascent decreased the objective")
            done = new_val - val <= tol * max(1.0, val)
            val = new_val
            if done:
                break
        if val > best_val:
            best_val, best_phases = val, PhaseStrategy(tuple(p.copy() for p in phi))
    return best_val, best_phases


def norm_inf(M, field=REAL, mode=EXACT, seed=0, restarts=8):
    """‖M‖_{∞,K}: exact for the real field, a lower bound for the complex field."""
    if field == REAL and mode == EXACT:
        return classical_bias_exact(M)[0]
    if field == REAL and mode == HEURISTIC:
        return classical_bias_heuristic(M, restarts=restarts, seed=seed)[0]
    if field == COMPLEX and mode == HEURISTIC:
        return complex_norm_heuristic(M, restarts=restarts, seed=seed)[0]
    raise UsageError(f"unsupported norm mode {field}/{mode}")
