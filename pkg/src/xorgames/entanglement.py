"""Shared-state constructors and the structural maps around them.

Covers Schmidt states and their partial-GHZ decomposition, clique-wise
states built from per-hyperedge GHZ states, the factor-permuting map between
edge-major and player-major orderings, the functional Φ obtained by
composing generalized inner products, and graph states with their
tri-partite functional Φ_G.

States are returned as numpy tensors with one axis per player unless noted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import config
from .errors import CapExceededError, FormatError, ShapeError

NORM_TOL = 1e-9


# ---------------------------------------------------------------------------
# GHZ and Schmidt states


def ghz_state(d: int, n_players: int) -> np.ndarray:
    """d^{-1/2} sum_i |i>^{⊗N} as a tensor of shape (d,)*N."""
    return schmidt_state(np.full(d, 1.0 / math.sqrt(d)), n_players)


def schmidt_state(alpha, n_players: int) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=np.complex128)
    d = alpha.size
    psi = np.zeros((d,) * n_players, dtype=np.complex128)
    for i in range(d):
        psi[(i,) * n_players] = alpha[i]
    return psi


def partial_ghz_state(level: int, d: int, n_players: int) -> np.ndarray:
    """Unnormalized sum_{i<=level} |i>^{⊗N} inside (C^d)^{⊗N}, flattened."""
    psi = np.zeros((d,) * n_players)
    for i in range(level):
        psi[(i,) * n_players] = 1.0
    return psi.ravel()


def partial_ghz_pairing(i: int, j: int) -> int:
    """<φ_i|φ_j> for the unnormalized partial GHZ states (equals min(i, j))."""
    if i < 1 or j < 1:
        raise ValueError("partial GHZ levels start at 1")
    return min(i, j)


@dataclass(frozen=True, eq=False)
class SchmidtCoefficients:
    """Schmidt weights of sum_i alpha_i |i>^{⊗N}.

    Zero weights are admitted so product states such as (1, 0) can be
    written; the unit-norm condition is enforced to 1e-9.
    """

    alpha: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=np.float64).ravel()
        if a.size == 0 or np.any(a < 0) or not np.all(np.isfinite(a)):
            raise ValueError("Schmidt coefficients must be nonnegative reals")
        if abs(float(np.sum(a**2)) - 1.0) > NORM_TOL:
            raise ValueError(f"Schmidt coefficients have squared norm {np.sum(a**2)!r}, not 1")
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)

    @property
    def d(self) -> int:
        return self.alpha.size


@dataclass(frozen=True, eq=False)
class PartialGhzDecomposition:
    """Weights beta with sum_l beta_l |φ_l> equal to the (sorted) Schmidt state.

    ``order`` is the basis relabeling that sorts the coefficients
    descending: sorted position p holds original basis vector order[p].
    """

    beta: np.ndarray
    order: np.ndarray

    def norm_residual(self) -> float:
        """|sum_{i,j} beta_i beta_j min(i, j) - 1|."""
        levels = np.arange(1, self.beta.size + 1)
        gram = np.minimum.outer(levels, levels)
        return abs(float(self.beta @ gram @ self.beta) - 1.0)

    def reconstruct(self, n_players: int) -> np.ndarray:
        d = self.beta.size
        out = np.zeros(d**n_players)
        for level, b in enumerate(self.beta, start=1):
            out += b * partial_ghz_state(level, d, n_players)
        return out


def schmidt_decompose(alpha) -> PartialGhzDecomposition:
    if not isinstance(alpha, SchmidtCoefficients):
        alpha = SchmidtCoefficients(alpha)
    order = np.argsort(-alpha.alpha, kind="stable")
    a = alpha.alpha[order]
    beta = np.empty_like(a)
    beta[:-1] = a[:-1] - a[1:]
    beta[-1] = a[-1]
    return PartialGhzDecomposition(beta, order)


# ---------------------------------------------------------------------------
# hypergraphs and the rearranging map


@dataclass(frozen=True)
class Hypergraph:
    """Coalition structure: vertices are players 0..N-1, each edge shares a GHZ state.

    Repeated edges model distinct copies of a state and must be enabled with
    ``allow_duplicates``.
    """

    n_vertices: int
    edges: tuple
    allow_duplicates: bool = False

    def __post_init__(self):
        edges = tuple(tuple(sorted(int(v) for v in e)) for e in self.edges)
        for e in edges:
            if len(e) == 0:
                raise ValueError("hyperedges must be nonempty")
            if len(set(e)) != len(e):
                raise ValueError(f"hyperedge {e} repeats a vertex")
            if e[0] < 0 or e[-1] >= self.n_vertices:
                raise ValueError(f"hyperedge {e} leaves the vertex set [0, {self.n_vertices})")
        if not self.allow_duplicates and len(set(edges)) != len(edges):
            raise ValueError("duplicate hyperedges need allow_duplicates=True")
        object.__setattr__(self, "edges", edges)

    def incidence(self, x: int) -> list[int]:
        """Indices of the edges containing vertex x, ascending."""
        return [i for i, e in enumerate(self.edges) if x in e]

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)


def triangle_with_pairs() -> Hypergraph:
    """Three players with a GHZ state in common plus a pair state on each pair."""
    return Hypergraph(3, ((0, 1), (1, 2), (0, 2), (0, 1, 2)))


def format_hypergraph(h: Hypergraph) -> str:
    lines = ["hypergraph v1", f"vertices {h.n_vertices}"]
    lines += ["edge " + " ".join(map(str, e)) for e in h.edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [ln.split() for ln in text.split("\n") if ln.strip()]
    if not lines or lines[0] != ["hypergraph", "v1"]:
        raise FormatError("missing 'hypergraph v1' header")
    if len(lines) < 2 or len(lines[1]) != 2 or lines[1][0] != "vertices":
        raise FormatError("expected 'vertices N' on line 2")
    try:
        n = int(lines[1][1])
        edges = []
        for toks in lines[2:]:
            if toks[0] != "edge" or len(toks) < 2:
                raise FormatError(f"bad edge line: {' '.join(toks)!r}")
            edges.append(tuple(int(t) for t in toks[1:]))
        return Hypergraph(n, tuple(edges), allow_duplicates=True)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def edge_major_order(h: Hypergraph, d: int) -> list:
    return [((x, e), d) for e, verts in enumerate(h.edges) for x in verts]


def player_major_order(h: Hypergraph, d: int) -> list:
    return [((x, e), d) for x in range(h.n_vertices) for e in h.incidence(x)]


def rearrange(source, target, v) -> np.ndarray:
    """Permute tensor factors of a flat vector from ``source`` to ``target`` order.

    Orders are sequences of ``(label, dim)`` with unique labels; both must
    describe the same factors.
    """
    source, target = list(source), list(target)
    labels = [lab for lab, _ in source]
    if len(set(labels)) != len(labels) or sorted(source, key=repr) != sorted(target, key=repr):
        raise ShapeError("source and target orders list different factors")
    v = np.asarray(v)
    dims = [dim for _, dim in source]
    if v.size != int(np.prod(dims, dtype=np.int64)):
        raise ShapeError(f"vector of size {v.size} does not match factor dims {dims}")
    pos = {lab: p for p, lab in enumerate(labels)}
    perm = [pos[lab] for lab, _ in target]
    return v.reshape(dims).transpose(perm).reshape(-1)


@dataclass(frozen=True, eq=False)
class CliquewiseState:
    """Player-major clique-wise state with its factor bookkeeping.

    ``factor_map[x]`` lists the ``(edge index, d)`` factors of player x in
    the order they appear inside that player's local space.
    """

    vector: np.ndarray
    player_dims: tuple
    factor_map: tuple = field(default=())

    def as_tensor(self) -> np.ndarray:
        return self.vector.reshape(self.player_dims)


def build_cliquewise_state(h: Hypergraph, d: int) -> CliquewiseState:
    total_log2 = sum(len(e) for e in h.edges) * math.log2(max(d, 1))
    if total_log2 > config.cap_entries_log2():
        raise CapExceededError(f"clique-wise state of dimension 2^{total_log2:.1f} exceeds cap")
    edge_major = np.ones(1, dtype=np.complex128)
    for e in h.edges:
        edge_major = np.kron(edge_major, ghz_state(d, len(e)).ravel())
    vector = rearrange(edge_major_order(h, d), player_major_order(h, d), edge_major)
    player_dims = tuple(d ** len(h.incidence(x)) for x in range(h.n_vertices))
    factor_map = tuple(tuple((e, d) for e in h.incidence(x)) for x in range(h.n_vertices))
    return CliquewiseState(vector, player_dims, factor_map)


def _restrict(h: Hypergraph, d: int, J, x: int) -> int:
    """Flat local index of the restriction of edge labels J to the edges at x."""
    idx = 0
    for e in h.incidence(x):
        idx = idx * d + J[e]
    return idx


def cliquewise_expectation_expansion(h: Hypergraph, d: int, matrices) -> complex:
    """<Ψ|⊗_x M_x|Ψ> expanded over pairs of edge labelings (J, J').

    Equals d^{-|E|} sum_{J,J'} prod_x M_x[J|E(x), J'|E(x)]; an independent
    route to the dense evaluation.
    """
    labelings = list(itertools.product(range(d), repeat=len(h.edges)))
    total = 0j
    for Jp in labelings:
        cols = [_restrict(h, d, Jp, x) for x in range(h.n_vertices)]
        for J in labelings:
            term = 1.0 + 0j
            for x in range(h.n_vertices):
                term *= matrices[x][_restrict(h, d, J, x), cols[x]]
            total += term
    return total / d ** len(h.edges)


def phi_evaluate(h: Hypergraph, d: int, vectors) -> complex:
    """Φ(⊗_x v_x) = sum over edge labelings J of prod_x v_x(J|E(x))."""
    for x, v in enumerate(vectors):
        if len(v) != d ** len(h.incidence(x)):
            raise ShapeError(f"vector for vertex {x} has length {len(v)}, expected {d ** len(h.incidence(x))}")
    total = 0j
    for J in itertools.product(range(d), repeat=len(h.edges)):
        term = 1.0 + 0j
        for x, v in enumerate(vectors):
            term *= v[_restrict(h, d, J, x)]
        total += term
    return total


def phi_via_rearrangement(h: Hypergraph, d: int, vectors) -> complex:
    """Φ as (⊗_e ψ_e)∘σ: permute ⊗_x v_x into edge-major order, then apply
    the generalized inner product of each edge block."""
    big = np.ones(1, dtype=np.complex128)
    for v in vectors:
        big = np.kron(big, np.asarray(v, dtype=np.complex128))
    edge_major = rearrange(player_major_order(h, d), edge_major_order(h, d), big)
    block = edge_major.reshape([d ** len(e) for e in h.edges]) if h.edges else edge_major
    out = block
    for e in reversed(h.edges):
        # ψ_e picks the diagonal entries |j...j> of its block
        stride = sum(d**m for m in range(len(e)))
        selector = np.zeros(d ** len(e))
        selector[np.arange(d) * stride] = 1.0
        out = np.tensordot(out, selector, axes=([out.ndim - 1], [0]))
    return complex(np.asarray(out).reshape(-1)[0])


def generalized_inner_product(*vectors):
    """sum_i v_1(i) ... v_k(i), with no conjugation."""
    vs = [np.asarray(v) for v in vectors]
    if len({v.shape for v in vs}) > 1:
        raise ShapeError("generalized inner product needs vectors of equal dimension")
    out = np.prod(np.stack(vs), axis=0).sum()
    return complex(out) if np.iscomplexobj(out) else float(out)


def phi_factored(h: Hypergraph, d: int, factors) -> complex:
    """Φ for tensor-structured inputs v_x = ⊗_{e∈E(x)} v_{x,e}: the product over
    edges of the generalized inner products of the per-edge factors.

    ``factors[x]`` lists the per-edge vectors of vertex x in incidence order.
    """
    total = 1.0 + 0j
    for e_idx, e in enumerate(h.edges):
        parts = [factors[x][h.incidence(x).index(e_idx)] for x in e]
        total *= generalized_inner_product(*parts)
    return total


def kron_all(vectors):
    out = np.ones(1, dtype=np.complex128)
    for v in vectors:
        out = np.kron(out, v)
    return out


# ---------------------------------------------------------------------------
# graph states


def _induced_edge_counts(q: int, edges) -> np.ndarray:
    """|E(S)| for every subset S, indexed by bitmask with vertex v on bit q-1-v."""
    masks = np.arange(2**q)
    counts = np.zeros(2**q, dtype=np.int64)
    for u, v in edges:
        counts += ((masks >> (q - 1 - u)) & 1) * ((masks >> (q - 1 - v)) & 1)
    return counts


def graph_state(q: int, edges) -> np.ndarray:
    """2^{-q/2} sum_S (-1)^{|E(S)|} |S>; vertex 0 is the most significant qubit."""
    if q > 20:
        raise CapExceededError(f"graph state on {q} qubits exceeds the 20-qubit cap")
    counts = _induced_edge_counts(q, edges)
    return np.where(counts % 2 == 0, 1.0, -1.0) / 2 ** (q / 2)


@dataclass(frozen=True)
class GraphStateSpec:
    """Simple undirected graph on vertices 0..q-1 split among three parties."""

    q: int
    edges: tuple
    parts: tuple

    def __post_init__(self):
        edges = tuple(sorted(tuple(sorted((int(u), int(v)))) for u, v in self.edges))
        for u, v in edges:
            if u == v or u < 0 or v >= self.q:
                raise ValueError(f"bad edge ({u}, {v}) for a simple graph on {self.q} vertices")
        if len(set(edges)) != len(edges):
            raise ValueError("graph has repeated edges")
        parts = tuple(tuple(sorted(int(v) for v in p)) for p in self.parts)
        if len(parts) != 3:
            raise ValueError("graph functional needs exactly three parts")
        flat = [v for p in parts for v in p]
        if sorted(flat) != list(range(self.q)):
            raise ValueError("parts must partition the vertex set")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "parts", parts)

    def part_dims(self) -> tuple:
        return tuple(2 ** len(p) for p in self.parts)


def _subset_masks(spec: GraphStateSpec, part: tuple) -> np.ndarray:
    """Global bitmask of each local subset index of one party."""
    k = len(part)
    local = np.arange(2**k)
    out = np.zeros(2**k, dtype=np.int64)
    for m, v in enumerate(part):
        out |= ((local >> (k - 1 - m)) & 1) << (spec.q - 1 - v)
    return out


def graph_state_pairing(spec: GraphStateSpec, v1, v2, v3) -> complex:
    """Bilinear dot (v1⊗v2⊗v3)·|Ψ> with qubits regrouped party by party."""
    psi = graph_state(spec.q, spec.edges)
    src = [(v, 2) for v in range(spec.q)]
    dst = [(v, 2) for p in spec.parts for v in p]
    grouped = rearrange(src, dst, psi)
    return complex(np.dot(kron_all([v1, v2, v3]), grouped))


def graph_functional(spec: GraphStateSpec, v1, v2, v3, check=True) -> complex:
    """Φ_G(v1⊗v2⊗v3) = sum over S_l ⊆ V_l of (-1)^{|E(S_1∪S_2∪S_3)|} prod_l v_l(S_l).

    With ``check`` the identity Φ_G = 2^{q/2} (v1⊗v2⊗v3)·|Ψ_G> is asserted
    to 1e-10.
    """
    vs = [np.asarray(v) for v in (v1, v2, v3)]
    for v, dim in zip(vs, spec.part_dims()):
        if v.shape != (dim,):
            raise ShapeError(f"party vector of shape {v.shape}, expected ({dim},)")
    masks = [_subset_masks(spec, p) for p in spec.parts]
    union = masks[0][:, None, None] | masks[1][None, :, None] | masks[2][None, None, :]
    counts = _induced_edge_counts(spec.q, spec.edges)[union]
    signs = np.where(counts % 2 == 0, 1.0, -1.0)
    value = complex(np.einsum("abc,a,b,c->", signs, *vs))
    if check:
        other = 2 ** (spec.q / 2) * graph_state_pairing(spec, *vs)
        if abs(value - other) > 1e-10:
            raise AssertionError(f"graph functional identity off by {abs(value - other):.3e}")
    return value


def format_graph(spec: GraphStateSpec) -> str:
    lines = ["graph v1", f"vertices {spec.q}"]
    lines += [f"edge {u} {v}" for u, v in spec.edges]
    lines.append("parts " + "|".join(",".join(map(str, p)) for p in spec.parts))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> GraphStateSpec:
    lines = [ln.strip() for ln in text.split("\n") if ln.strip()]
    if not lines or lines[0] != "graph v1":
        raise FormatError("missing 'graph v1' header")
    try:
        head = lines[1].split()
        if head[0] != "vertices":
            raise FormatError("expected 'vertices q' on line 2")
        q = int(head[1])
        edges, parts = [], None
        for ln in lines[2:]:
            toks = ln.split(maxsplit=1)
            if toks[0] == "edge":
                u, v = toks[1].split()
                edges.append((int(u), int(v)))
            elif toks[0] == "parts":
                body = toks[1] if len(toks) > 1 else ""
                parts = tuple(tuple(int(t) for t in p.split(",") if t) for p in body.split("|"))
            else:
                raise FormatError(f"bad graph line: {ln!r}")
        if parts is None:
            parts = (tuple(range(q)), (), ())
        return GraphStateSpec(q, tuple(edges), parts)
    except (ValueError, IndexError) as exc:
        raise FormatError(str(exc)) from None


def read_graph(path) -> GraphStateSpec:
    return parse_graph(Path(path).read_text())
