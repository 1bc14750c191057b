"""Entanglement-restricted biases by see-saw (alternating exact best response).

Every optimizer here returns a lower bound on the quantity it targets,
together with the strategy that attains it.  The observable see-saw works
for any fixed shared state: with all other observables fixed the bias is
sum_i Re Tr(F_i M(i)) for one player's observables M(i), and the best
±1-valued observable is U sign(Λ) U† for the eigendecomposition of the
Hermitian part of F_i^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import (
    Hypergraph,
    SchmidtCoefficients,
    build_cliquewise_state,
    generalized_inner_product,
    ghz_state,
    schmidt_state,
)
from .errors import ShapeError, UsageError
from .tensor_core import COMPLEX, REAL, as_tensor, interleaved_outer

HERMITIAN_TOL = 1e-9

__all__ = [
    "ObservableStrategy",
    "VectorStrategy",
    "generalized_inner_product",
    "evaluate_strategy",
    "expectation_tensor",
    "tsirelson_bias",
    "gamma_star",
    "gamma_objective",
    "ghz_bias_seesaw",
    "schmidt_bias_seesaw",
    "cliquewise_bias_seesaw",
    "observable_seesaw",
    "lift_classical",
    "tensor_strategies",
    "ghz_column_vectors",
    "SeesawTrace",
]


@dataclass(frozen=True, eq=False)
class ObservableStrategy:
    """±1-valued observables per player and question plus the shared state.

    ``observables[k]`` has shape (n_k, D_k, D_k); ``state`` has shape
    (D_1, ..., D_N).
    """

    observables: tuple
    state: np.ndarray

    def validate(self, tol=HERMITIAN_TOL):
        if len(self.observables) != self.state.ndim:
            raise ShapeError("need one observable family per tensor factor of the state")
        for k, obs in enumerate(self.observables):
            D = self.state.shape[k]
            if obs.ndim != 3 or obs.shape[1:] != (D, D):
                raise ShapeError(f"player {k} observables have shape {obs.shape}, state factor is {D}")
            if np.max(np.abs(obs - obs.conj().transpose(0, 2, 1)), initial=0) > tol:
                raise ValueError(f"player {k} has a non-Hermitian observable")
            sq = np.einsum("qab,qbc->qac", obs, obs)
            if np.max(np.abs(sq - np.eye(D)), initial=0) > tol:
                raise ValueError(f"player {k} has an observable that does not square to identity")
        if abs(np.linalg.norm(self.state) - 1.0) > tol:
            raise ValueError("shared state is not normalized")

    @property
    def dims(self):
        return tuple(len(o) for o in self.observables)


@dataclass(frozen=True, eq=False)
class VectorStrategy:
    """Unit vectors per player and question, ``vectors[k]`` of shape (n_k, d)."""

    vectors: tuple


@dataclass
class SeesawTrace:
    """Objective after every single-player update of one restart."""

    values: list

    def is_monotone(self, tol=1e-9) -> bool:
        v = np.asarray(self.values)
        return bool(np.all(np.diff(v) >= -tol * np.maximum(1.0, np.abs(v[:-1]))))


# ---------------------------------------------------------------------------
# einsum plumbing: axis labels a_k = k (bra), b_k = N + k (ket), q_k = 2N + k (question)


def _operands(M, psi, obs, skip=None):
    N = psi.ndim
    ops = [np.conj(psi), list(range(N))]
    for k in range(N):
        if k != skip:
            ops += [obs[k], [2 * N + k, k, N + k]]
    ops += [psi, [N + k for k in range(N)]]
    if M is not None:
        ops += [M, [2 * N + k for k in range(N)]]
    return ops


def contract_reference(M, psi, obs, skip, out):
    """Single-einsum form of :func:`_contract`, kept as an independent check."""
    return np.einsum(*_operands(M, psi, obs, skip), list(out))


def _contract(M, psi, obs, skip, out):
    """<ψ| ⊗_{k != skip} O_k |ψ> weighted by M, as a chain of pairwise tensordots.

    Labels follow :func:`_operands`; ``out`` lists the labels of the result.
    """
    N = psi.ndim
    x, xl = psi, [N + k for k in range(N)]
    for l in range(N):
        if l == skip:
            continue
        ax = xl.index(N + l)
        x = np.tensordot(obs[l], x, axes=([2], [ax]))
        xl = [2 * N + l, l] + xl[:ax] + xl[ax + 1 :]
    if M is not None:
        qs = [l for l in range(N) if l != skip]
        x = np.tensordot(M, x, axes=(qs, [xl.index(2 * N + l) for l in qs]))
        xl = ([2 * N + skip] if skip is not None else []) + [v for v in xl if v not in {2 * N + l for l in qs}]
    aa = [l for l in range(N) if l != skip]
    x = np.tensordot(np.conj(psi), x, axes=(aa, [xl.index(l) for l in aa]))
    xl = ([skip] if skip is not None else []) + [v for v in xl if v not in set(aa)]
    return np.transpose(x, [xl.index(v) for v in out]) if out else x


def expectation_tensor(strategy: ObservableStrategy) -> np.ndarray:
    """E[I] = <ψ| ⊗_k M_k(i_k) |ψ> for every question tuple I."""
    N = strategy.state.ndim
    return _contract(None, strategy.state, strategy.observables, None, [2 * N + k for k in range(N)])


def evaluate_strategy(M, strategy: ObservableStrategy, check=True) -> float:
    """|sum_I M[I] <ψ|⊗_k M_k(i_k)|ψ>| for a validated strategy."""
    M = as_tensor(M)
    if check:
        strategy.validate()
    if M.shape != strategy.dims:
        raise ShapeError(f"tensor {M.shape} does not match strategy questions {strategy.dims}")
    E = expectation_tensor(strategy)
    if np.max(np.abs(E.imag), initial=0) > HERMITIAN_TOL:
        raise AssertionError("expectation of Hermitian observables came out complex")
    return abs(np.sum(M * E.real)) if not np.iscomplexobj(M) else abs(np.sum(M * E))


# ---------------------------------------------------------------------------
# observable see-saw


def _best_observables(F):
    """Per question, the Hermitian unitary maximizing Re Tr(F_q^T O)."""
    H = 0.5 * (F.transpose(0, 2, 1) + F.conj())
    w, U = np.linalg.eigh(H)
    s = np.where(w >= 0, 1.0, -1.0)
    obs = np.einsum("qab,qb,qcb->qac", U, s, U.conj())
    return obs, float(np.abs(w).sum())


def random_observables(rng, n, D):
    G = rng.standard_normal((n, D, D)) + 1j * rng.standard_normal((n, D, D))
    w, U = np.linalg.eigh(G + G.conj().transpose(0, 2, 1))
    s = np.where(w >= 0, 1.0, -1.0)
    return np.einsum("qab,qb,qcb->qac", U, s, U.conj())


def observable_seesaw(M, psi, restarts=8, seed=0, max_iter=500, tol=1e-10, init=None, trace=False):
    """See-saw over ±1 observables for the fixed shared state ``psi``.

    :param psi: state tensor with one axis per player.
    :param init: optional list of starting observable families, used for
        restart 0 instead of a random draw.
    :return: ``(value, strategy)`` or ``(value, strategy, traces)`` when
        ``trace`` is set; ties across restarts keep the lowest restart index.
    """
    M = as_tensor(M)
    if np.iscomplexobj(M):
        raise UsageError("observable see-saw expects a real tensor")
    M = M.astype(np.complex128)
    psi = np.asarray(psi, dtype=np.complex128)
    N = M.ndim
    if psi.ndim != N:
        raise ShapeError(f"state has {psi.ndim} factors but the tensor has {N} players")
    best_val, best_obs, traces = -np.inf, None, []
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        if r == 0 and init is not None:
            obs = [np.asarray(o, dtype=np.complex128) for o in init]
        else:
            obs = [random_observables(rng, n, D) for n, D in zip(M.shape, psi.shape)]
        value = float(_contract(M, psi, obs, None, []).real)
        values = [value]
        for _ in range(max_iter):
            start = value
            for k in range(N):
                F = _contract(M, psi, obs, k, [2 * N + k, k, N + k])
                obs[k], new = _best_observables(F)
                if new < value - 1e-9 * max(1.0, abs(value)):
                    raise AssertionError(f"see-saw step decreased the bias: {value} -> {new}")
                value = new
                values.append(value)
            if value - start < tol:
                break
        traces.append(SeesawTrace(values))
        if value > best_val:
            best_val, best_obs = value, [o.copy() for o in obs]
    strategy = ObservableStrategy(tuple(best_obs), psi)
    final = abs(float(_contract(M, psi, best_obs, None, []).real))
    if trace:
        return final, strategy, traces
    return final, strategy


def ghz_bias_seesaw(M, d=2, restarts=8, seed=0, **kw):
    """Lower bound on the bias with a shared d-dimensional GHZ state."""
    return observable_seesaw(M, ghz_state(d, np.ndim(M)), restarts, seed, **kw)


def schmidt_bias_seesaw(M, alpha, restarts=8, seed=0, **kw):
    """Lower bound on the bias with the Schmidt state sum_i alpha_i |i>^{⊗N}."""
    if not isinstance(alpha, SchmidtCoefficients):
        alpha = SchmidtCoefficients(alpha)
    return observable_seesaw(M, schmidt_state(alpha.alpha, np.ndim(M)), restarts, seed, **kw)


def cliquewise_bias_seesaw(M, hypergraph: Hypergraph, d=2, restarts=8, seed=0, **kw):
    """Lower bound on the bias with one d-dimensional GHZ state per hyperedge."""
    if hypergraph.n_vertices != np.ndim(M):
        raise ShapeError(f"hypergraph has {hypergraph.n_vertices} vertices, game has {np.ndim(M)} players")
    state = build_cliquewise_state(hypergraph, d)
    return observable_seesaw(M, state.as_tensor(), restarts, seed, **kw)


# ---------------------------------------------------------------------------
# vector relaxations


def _normalize_rows(X, fallback=None):
    """Rows scaled to unit norm; zero rows take the fallback row (or stay zero)."""
    fallback = X if fallback is None else fallback
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    return np.where(norms > 0, X / np.where(norms > 0, norms, 1.0), fallback)


def tsirelson_bias(M, restarts=8, seed=0, max_iter=20000, tol=1e-14):
    """Two-player entangled bias via real unit vectors of dimension min(n1, n2) + 1.

    Alternates u_i <- normalize(sum_j M[i,j] v_j) and the symmetric update
    for v; the objective is nondecreasing.  Returns ``(value, VectorStrategy)``.
    """
    M = as_tensor(M)
    if M.ndim != 2 or np.iscomplexobj(M):
        raise UsageError("Tsirelson's characterization needs a real 2-tensor")
    n1, n2 = M.shape
    dim = min(n1, n2) + 1
    best_val, best = -np.inf, None
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        U = _normalize_rows(rng.standard_normal((n1, dim)))
        V = _normalize_rows(rng.standard_normal((n2, dim)))
        value = float(np.sum(M * (U @ V.T)))
        for _ in range(max_iter):
            start = value
            U = _normalize_rows(M @ V, U)
            V = _normalize_rows(M.T @ U, V)
            value = float(np.sum(M * (U @ V.T)))
            if value < start - 1e-12 * max(1.0, abs(start)):
                raise AssertionError("Tsirelson see-saw decreased the objective")
            if value - start < tol:
                break
        if value > best_val:
            best_val, best = value, (U, V)
    return best_val, VectorStrategy(best)


def gamma_objective(M, vectors):
    """sum_I M[I] <f_1(i_1), ..., f_N(i_N)> (generalized inner products)."""
    M = as_tensor(M)
    vs = vectors.vectors if isinstance(vectors, VectorStrategy) else vectors
    N = M.ndim
    ops = [M, list(range(N))]
    for k, F in enumerate(vs):
        ops += [F, [k, N]]
    return complex(np.einsum(*ops, []))


def gamma_star(M, d=None, restarts=8, seed=0, field=COMPLEX, max_iter=2000, tol=1e-12):
    """Lower bound on γ*(M) by alternating ascent over unit vectors in K^d.

    With all but player k fixed, the objective is linear in each f_k(i) with
    coefficient vector c_{k,i}; the best unit vector is conj(c)/|c|.  The
    returned strategy is phase-aligned so its objective is real and positive.
    """
    M = as_tensor(M)
    N = M.ndim
    d = 2 * max(M.shape) if d is None else d
    if d < 1:
        raise ValueError("vector dimension must be positive")
    if field == REAL and np.iscomplexobj(M):
        raise UsageError("real vectors need a real tensor")
    best_val, best = -np.inf, None
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        if field == COMPLEX:
            vs = [rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d)) for n in M.shape]
        elif field == REAL:
            vs = [rng.standard_normal((n, d)) for n in M.shape]
        else:
            raise UsageError(f"unknown field {field!r}")
        vs = [_normalize_rows(v) for v in vs]
        value = abs(gamma_objective(M, vs))
        for _ in range(max_iter):
            start = value
            for k in range(N):
                ops = [M, list(range(N))]
                for l in range(N):
                    if l != k:
                        ops += [vs[l], [l, N]]
                c = np.einsum(*ops, [k, N])
                if field == REAL:
                    c = c.real
                vs[k] = _normalize_rows(np.conj(c), vs[k])
                # the updated objective is sum_i <c_i, f_k(i)> = sum_i |c_i| (zero rows add 0)
                new = float(np.linalg.norm(c, axis=1).sum())
                if new < value - 1e-9 * max(1.0, value):
                    raise AssertionError("gamma see-saw decreased the objective")
                value = new
            if value - start < tol * max(1.0, value):
                break
        if value > best_val:
            best_val, best = value, [v.copy() for v in vs]
    obj = gamma_objective(M, best)
    if abs(obj) > 0:
        best[0] = best[0] * (np.conj(obj) / abs(obj))
        if field == REAL:
            best[0] = best[0].real
    return abs(gamma_objective(M, best)), VectorStrategy(tuple(best))


# ---------------------------------------------------------------------------
# strategy lifts and products


def lift_classical(strategy, state) -> ObservableStrategy:
    """Scalar observables x_k(i)·I on the factors of ``state``."""
    state = np.asarray(state, dtype=np.complex128)
    obs = []
    for k, s in enumerate(strategy.signs):
        D = state.shape[k]
        obs.append(np.asarray(s, dtype=np.complex128)[:, None, None] * np.eye(D))
    return ObservableStrategy(tuple(obs), state)


def tensor_strategies(s1: ObservableStrategy, s2: ObservableStrategy) -> ObservableStrategy:
    """Play s1 and s2 side by side: question (i, i') gets M(i)⊗M'(i') on ψ⊗ψ'.

    Question pairs flatten as i * n' + i', matching XOR repetition.
    """
    N = s1.state.ndim
    if s2.state.ndim != N:
        raise ShapeError("strategies have different player counts")
    state = interleaved_outer(s1.state, s2.state)
    obs = []
    for o1, o2 in zip(s1.observables, s2.observables):
        n1, D1, _ = o1.shape
        n2, D2, _ = o2.shape
        kron = np.einsum("iab,jcd->ijacbd", o1, o2).reshape(n1 * n2, D1 * D2, D1 * D2)
        obs.append(kron)
    return ObservableStrategy(tuple(obs), state)


def ghz_column_vectors(strategy: ObservableStrategy, column: int) -> VectorStrategy:
    """Column ``column`` of every observable, as unit vectors (GHZ-to-vector map)."""
    return VectorStrategy(tuple(o[:, :, column] for o in strategy.observables))
