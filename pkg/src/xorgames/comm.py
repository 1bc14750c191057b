"""Generalized-discrepancy communication lower bounds and the number-on-the-forehead lift."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .classical import classical_bias_exact
from .errors import CapExceededError, ShapeError, UsageError
from .quantum import ghz_bias_seesaw
from .tensor_core import Game, inner_product

RANDOMIZED = "RANDOMIZED"
ENTANGLED = "ENTANGLED"
QUANTUM_CLIQUEWISE = "QUANTUM_CLIQUEWISE"


@dataclass(frozen=True)
class LowerBoundRecord:
    """One bound log2((<A, B∘π> - 2ε) / bias), optionally scaled and shifted.

    ``raw`` is None when the numerator is not positive (no bound);
    ``bound`` is ``raw`` clamped at 0.
    """

    target: str
    against: str
    dist: str
    eps: float
    correlation: float
    bias: float
    raw: float | None
    model: str
    additive_constant: float = 0.0
    certified: bool = True

    @property
    def bound(self) -> float | None:
        return None if self.raw is None else max(0.0, self.raw)

    def line(self) -> str:
        def f(v):
            return "none" if v is None else repr(float(v))

        return (
            f"model={self.model} target={self.target} against={self.against} dist={self.dist} eps={f(self.eps)} "
            f"correlation={f(self.correlation)} bias={f(self.bias)} raw={f(self.raw)} bound={f(self.bound)} "
            f"additive_constant={f(self.additive_constant)} certified={int(self.certified)}"
        )


def _tensors(A, B, pi):
    A = np.asarray(A, dtype=np.float64)
    B = A if B is None else np.asarray(B, dtype=np.float64)
    pi = np.full(A.shape, 1.0 / A.size) if pi is None else np.asarray(pi, dtype=np.float64)
    if not (A.shape == B.shape == pi.shape):
        raise ShapeError(f"shapes differ: A {A.shape}, B {B.shape}, π {pi.shape}")
    return A, B, pi


def _log_ratio(correlation, eps, bias):
    num = correlation - 2 * eps
    if num <= 0 or bias <= 0:
        return None
    return math.log2(num / bias)


def gen_disc_bound(A, B=None, pi=None, eps=0.0, entangled=False, d=2, seed=0, names=("A", "B", "pi")):
    """log2((<A, B∘π> - 2ε) / β(B∘π)) with β computed exactly.

    :param B: sign tensor to correlate against (defaults to A).
    :param pi: distribution (defaults to uniform).
    :param entangled: replace β by a GHZ see-saw value of dimension ``d``.  The
        see-saw value is only a lower bound on the entangled bias, so the
        resulting number may overstate the true bound and is marked
        ``certified=False``; it is illustrative only.
    """
    A, B, pi = _tensors(A, B, pi)
    Bpi = B * pi
    correlation = float(inner_product(A, Bpi))
    if entangled:
        bias, _ = ghz_bias_seesaw(Bpi, d, restarts=4, seed=seed)
        model = f"{ENTANGLED}(ghz,d={d})"
    else:
        bias, _ = classical_bias_exact(Bpi)
        model = RANDOMIZED
    return LowerBoundRecord(
        names[0], names[1], names[2], float(eps), correlation, float(bias),
        _log_ratio(correlation, eps, bias), model, certified=not entangled,
    )


def cliquewise_additive_constant(k: int, N: int) -> float:
    """3(k + N^2)N/4: half the log of the clique-wise-plus-EPR gap factor 2^{3(k+N^2)N/2}."""
    return 3 * (k + N * N) * N / 4


def cliquewise_quantum_bound(A, B=None, pi=None, eps=0.0, k=1, N=None, names=("A", "B", "pi")):
    """Quantum NOF lower bound with k-coalition clique-wise entanglement.

    ½·log2((<A, B∘π> - 2ε)/β(B∘π)) - 3(k + N^2)N/4, β exact.
    """
    rec = gen_disc_bound(A, B, pi, eps, names=names)
    N = np.ndim(A) if N is None else N
    if k < 1 or N < 1:
        raise UsageError("k and N must be positive")
    c = cliquewise_additive_constant(k, N)
    raw = None if rec.raw is None else 0.5 * rec.raw - c
    return LowerBoundRecord(
        rec.target, rec.against, rec.dist, rec.eps, rec.correlation, rec.bias, raw,
        f"{QUANTUM_CLIQUEWISE}(k={k},N={N})", additive_constant=c,
    )


def bns_value(n: int, N: int) -> float:
    """n / 2^{2N}, the classical discrepancy-based NOF bound for GIP (descriptive)."""
    return n / 2 ** (2 * N)


# ---------------------------------------------------------------------------
# number-on-the-forehead lift


def _tuple_index(I, k, n):
    rest = I[:k] + I[k + 1 :]
    return int(np.ravel_multi_index(rest, (n,) * len(rest))) if rest else 0


def nof_lift(f, pi=None):
    """Lift an N-player function to the tensor whose bias is the NOF discrepancy.

    Player k's argument is the (N-1)-tuple I with i_k removed, indexed
    lexicographically.  Consistent argument tuples carry f and π at the
    reconstructed input; all other cells are 0.
    :return: ``(f_lift, pi_lift)`` of shape (n^{N-1},)^N.
    """
    if isinstance(f, Game):
        f, pi = f.sign.astype(np.float64), f.dist
    f = np.asarray(f, dtype=np.float64)
    N = f.ndim
    if len(set(f.shape)) != 1:
        raise ShapeError("the lift needs a common question count")
    n = f.shape[0]
    pi = np.full(f.shape, 1.0 / f.size) if pi is None else np.asarray(pi, dtype=np.float64)
    if pi.shape != f.shape:
        raise ShapeError("distribution shape differs from the function")
    m = n ** (N - 1)
    if N * (N - 1) * math.log2(max(n, 2)) > config.cap_entries_log2():
        raise CapExceededError(f"lifted tensor has {m}^{N} entries")
    f_lift = np.zeros((m,) * N)
    pi_lift = np.zeros((m,) * N)
    for I in itertools.product(range(n), repeat=N):
        cell = tuple(_tuple_index(I, k, n) for k in range(N))
        f_lift[cell] = f[I]
        pi_lift[cell] = pi[I]
    return f_lift, pi_lift


def nof_discrepancy_direct(f, pi=None):
    """max over x_k: [n]^{N-1} -> ±1 of |sum_I f(I)π(I) prod_k x_k(I without i_k)|, by brute force.

    Independent of the lift and of the tensor-norm enumerator; meant for
    n^{N-1}·N <= 16 or so.
    """
    f = np.asarray(f, dtype=np.float64)
    N, n = f.ndim, f.shape[0]
    pi = np.full(f.shape, 1.0 / f.size) if pi is None else np.asarray(pi, dtype=np.float64)
    m = n ** (N - 1)
    if m * N > 20:
        raise CapExceededError("direct NOF enumeration capped at 20 sign bits")
    cells = list(itertools.product(range(n), repeat=N))
    weights = np.array([f[I] * pi[I] for I in cells])
    slots = np.array([[k * m + _tuple_index(I, k, n) for k in range(N)] for I in cells])
    best = 0.0
    for bits in range(2 ** (m * N)):
        x = np.array([1.0 if not (bits >> b) & 1 else -1.0 for b in range(m * N)])
        best = max(best, abs(float(np.dot(weights, x[slots].prod(axis=1)))))
    return best
