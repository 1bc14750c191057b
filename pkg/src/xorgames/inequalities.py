"""Numerical certification of Grothendieck-type inequalities and QC-gap bounds.

Every suite checks an instance in the one-sided form

    lhs <= const * rhs

where ``lhs`` is a witnessed or see-saw value (a lower bound on the
supremum the inequality controls) and ``rhs`` is an exactly computed norm.
A failing report is therefore a genuine counterexample or a bug, never
optimizer slack.  The one exception is noted per suite through
``rhs_exact=False``: there ``rhs`` is itself a lower bound, so a pass still
certifies the instance while a failure is inconclusive.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import config
from .classical import classical_bias_exact, complex_norm_heuristic, sign_table
from .entanglement import (
    GraphStateSpec,
    Hypergraph,
    SchmidtCoefficients,
    _induced_edge_counts,
    _subset_masks,
    graph_functional,
    graph_state_pairing,
    kron_all,
    phi_evaluate,
    phi_factored,
    phi_via_rearrangement,
    triangle_with_pairs,
)
from .errors import CapExceededError, UsageError
from .games import random_game
from .quantum import cliquewise_bias_seesaw, gamma_objective, gamma_star, ghz_bias_seesaw, schmidt_bias_seesaw
from .tensor_core import COMPLEX, REAL, Game

DEFAULT_SLACK = 1e-7

MIXED = "MIXED"
COMPLEX_PM = "COMPLEX_PM"
FIELD_MATCHED = "FIELD_MATCHED"
GHZ, SCHMIDT, CLIQUEWISE = "GHZ", "SCHMIDT", "CLIQUEWISE"


@dataclass(frozen=True)
class ConstantsTable:
    """Grothendieck-type constants (upper estimates) and the composite bounds built on them."""

    K_G_C: float = 1.40491
    K_G_R: float = 1.7822
    K_G_R2: float = math.sqrt(2.0)
    KHINTCHINE_A1: float = 1.0 / math.sqrt(2.0)

    def grothendieck(self, field: str) -> float:
        return self.K_G_C if field == COMPLEX else self.K_G_R

    def schmidt_gap(self, n_players: int) -> float:
        """2^{(3N-5)/2} K_G^C: Schmidt/GHZ bias over classical bias, and the mixed Tonge bound.

        A single player gains nothing from entanglement, so N = 1 gives 1.
        """
        if n_players == 1:
            return 1.0
        return 2 ** ((3 * n_players - 5) / 2) * self.K_G_C

    def cliquewise_gap(self, k: int, r: int) -> float:
        """2^{k(3r-5)/2} (K_G^C)^k for k coalitions of at most r players."""
        return 2 ** (k * (3 * r - 5) / 2) * self.K_G_C**k

    def stabilizer_gap(self) -> float:
        """8 (K_G^C)^4 for three players sharing any stabilizer state."""
        return 8 * self.K_G_C**4

    def tonge_field_matched(self, n_players: int, field: str) -> float:
        """2^{(N-2)/2} K_G^K when tensor, vectors and norm share the field K."""
        return 2 ** ((n_players - 2) / 2) * self.grothendieck(field)


CONSTANTS = ConstantsTable()


def _fmt(v) -> str:
    return repr(float(v))


@dataclass
class VerificationReport:
    suite: str
    trial: int
    seed: int
    sizes: str
    lhs: float
    rhs: float
    const: float
    constant_name: str
    witness: str = ""
    slack: float = DEFAULT_SLACK
    rhs_exact: bool = True
    anomaly: str = ""

    def __post_init__(self):
        for name in ("lhs", "rhs", "const", "slack"):
            setattr(self, name, float(getattr(self, name)))

    @property
    def margin(self) -> float:
        return self.rhs * self.const - self.lhs

    @property
    def passed(self) -> bool:
        return bool(self.margin >= -self.slack)

    def line(self) -> str:
        return (
            f"suite={self.suite} trial={self.trial} lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)} "
            f"const={_fmt(self.const)} margin={_fmt(self.margin)} pass={int(self.passed)}"
        )

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trial": self.trial,
            "seed": self.seed,
            "sizes": self.sizes,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "const": self.const,
            "constant_name": self.constant_name,
            "margin": self.margin,
            "pass": self.passed,
            "rhs_exact": self.rhs_exact,
            "witness": self.witness,
            "anomaly": self.anomaly,
        }


def run_trials(fn, trials: int) -> list:
    """Apply ``fn(trial)`` to 0..trials-1; output order is by trial index."""
    workers = config.threads()
    if workers > 1 and trials > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, range(trials)))
    return [fn(t) for t in range(trials)]


def _trial_rng(seed, trial, salt=0):
    return np.random.default_rng([seed, trial, salt])


def _trial_seed(rng) -> int:
    return int(rng.integers(2**31))


def _unit_rows(rng, n, d, field):
    X = rng.standard_normal((n, d))
    if field == COMPLEX:
        X = X + 1j * rng.standard_normal((n, d))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# multilinear Grothendieck (Tonge) inequalities


def verify_tonge(N, n, d, trials, seed, variant=MIXED, restarts=2):
    """Instance checks of the N-linear Grothendieck inequality for generalized inner products.

    Per trial the question count is drawn from [2, n] and the vector
    dimension from [1, d]; the lhs is the larger of a random unit-vector
    witness and a γ* see-saw started from the trial seed.

    Variants: MIXED (real tensor, complex vectors, real norm, constant
    2^{(3N-5)/2} K_G^C); REAL (everything real, 2^{(N-2)/2} K_G^R);
    COMPLEX (everything complex, 2^{(N-2)/2} K_G^C, complex norm from the
    phase-ascent lower bound, so ``rhs_exact`` is False).
    """
    if N < 2:
        raise UsageError("the multilinear inequality needs N >= 2")
    if variant not in (MIXED, REAL, COMPLEX):
        raise UsageError(f"unknown Tonge variant {variant!r}")

    def trial(t):
        rng = _trial_rng(seed, t)
        n_t = int(rng.integers(2, n + 1))
        d_t = int(rng.integers(1, d + 1))
        shape = (n_t,) * N
        if n_t**N > 2 ** config.cap_entries_log2() or N * n_t > config.cap_bits():
            raise CapExceededError("tensor too large for exact norm")
        B = rng.standard_normal(shape)
        if variant == COMPLEX:
            B = B + 1j * rng.standard_normal(shape)
        vec_field = REAL if variant == REAL else COMPLEX
        vectors = [_unit_rows(rng, n_t, d_t, vec_field) for _ in range(N)]
        lhs_witness = abs(gamma_objective(B, vectors))
        lhs_seesaw, _ = gamma_star(B, d_t, restarts=restarts, seed=_trial_seed(rng), field=vec_field)
        lhs = max(lhs_witness, lhs_seesaw)
        if variant == COMPLEX:
            rhs, _ = complex_norm_heuristic(B, restarts=8, seed=_trial_seed(rng))
            const, name, exact = CONSTANTS.tonge_field_matched(N, COMPLEX), "tonge_field_matched_C", False
        else:
            rhs, _ = classical_bias_exact(B)
            exact = True
            if variant == REAL:
                const, name = CONSTANTS.tonge_field_matched(N, REAL), "tonge_field_matched_R"
            else:
                const, name = CONSTANTS.schmidt_gap(N), "tonge_mixed"
        return VerificationReport(
            f"tonge-{variant.lower()}", t, seed, f"N={N} n={n_t} d={d_t}", lhs, rhs, const, name,
            witness=f"witness_lhs={lhs_witness:.6g} seesaw_lhs={lhs_seesaw:.6g}", rhs_exact=exact,
        )

    return run_trials(trial, trials)


# ---------------------------------------------------------------------------
# Littlewood and Khintchine


def littlewood_lhs(M) -> float:
    """sum_i (sum_j |M[i,j]|^2)^{1/2}."""
    return float(np.linalg.norm(np.asarray(M), axis=1).sum())


def littlewood_pm_rhs(M) -> float:
    """max over φ in {±1}^n of sum_j |sum_i M[i,j] φ_i| (the χ maximum is the modulus sum)."""
    M = np.asarray(M)
    n = M.shape[0]
    if n > 20:
        raise CapExceededError("sign enumeration over more than 20 rows")
    return float(np.abs(sign_table(n) @ M).sum(axis=1).max())


def verify_littlewood(n, d, trials, seed, variant=COMPLEX_PM):
    """Extended Littlewood inequality on random complex n_t x d_t matrices (n_t <= n, d_t <= d).

    COMPLEX_PM: constant 2√2 with ±1 row scalars, exact by enumeration.
    FIELD_MATCHED: constant √2 with complex scalars; the rhs is a phase-ascent
    lower bound, so failures would be inconclusive.
    """
    if variant not in (COMPLEX_PM, FIELD_MATCHED):
        raise UsageError(f"unknown Littlewood variant {variant!r}")

    def trial(t):
        rng = _trial_rng(seed, t)
        n_t, d_t = int(rng.integers(1, n + 1)), int(rng.integers(1, d + 1))
        M = rng.standard_normal((n_t, d_t)) + 1j * rng.standard_normal((n_t, d_t))
        lhs = littlewood_lhs(M)
        if variant == COMPLEX_PM:
            rhs, const, exact = littlewood_pm_rhs(M), 2 * math.sqrt(2), True
        else:
            rhs = complex_norm_heuristic(M, restarts=8, seed=_trial_seed(rng))[0]
            const, exact = math.sqrt(2), False
        return VerificationReport(
            f"littlewood-{variant.lower()}", t, seed, f"n={n_t} d={d_t}", lhs, rhs, const,
            f"littlewood_{variant.lower()}", rhs_exact=exact,
        )

    return run_trials(trial, trials)


def khintchine_ratio(c) -> float:
    """E|sum_i c_i ε_i| / ||c||_2 over all 2^n sign patterns, computed exactly.

    The ratio is at least 1/√2 for every nonzero real c; c = (1, 1) attains it.
    """
    c = np.asarray(c, dtype=np.float64).ravel()
    if c.size > 24:
        raise CapExceededError("Khintchine enumeration capped at 24 terms")
    norm = np.linalg.norm(c)
    if norm == 0:
        raise ValueError("ratio undefined for the zero vector")
    # ε_1 = +1 suffices since |-s| = |s|
    sums = np.array([c[0]])
    for ci in c[1:]:
        sums = np.concatenate([sums + ci, sums - ci])
    return float(np.abs(sums).mean() / norm)


def verify_khintchine(trials, seed, n_max=12):
    def trial(t):
        rng = _trial_rng(seed, t)
        n_t = int(rng.integers(1, n_max + 1))
        c = rng.standard_normal(n_t)
        ratio = khintchine_ratio(c)
        return VerificationReport(
            "khintchine", t, seed, f"n={n_t}", CONSTANTS.KHINTCHINE_A1, ratio, 1.0, "khintchine_A1", slack=1e-12
        )

    return run_trials(trial, trials)


# ---------------------------------------------------------------------------
# QC-gap bounds


def qc_gap_constant(n_players, model, hypergraph=None):
    if model in (GHZ, SCHMIDT):
        return CONSTANTS.schmidt_gap(n_players), "schmidt_gap"
    if model == CLIQUEWISE:
        if hypergraph is None:
            raise UsageError("clique-wise model needs a hypergraph")
        tri = triangle_with_pairs()
        if hypergraph.n_vertices == 3 and sorted(hypergraph.edges) == sorted(tri.edges):
            return CONSTANTS.stabilizer_gap(), "stabilizer_gap"
        return CONSTANTS.cliquewise_gap(len(hypergraph.edges), hypergraph.rank), "cliquewise_gap"
    raise UsageError(f"unknown model {model!r}")


def verify_qc_gap(game, model=GHZ, seed=0, d=2, alpha=None, hypergraph=None, restarts=4, trial=0, **seesaw):
    """See-saw entangled bias against the classical bias times the model's constant.

    The observed gap lhs/β is recorded in the witness field.  Extra keyword
    arguments (``tol``, ``max_iter``) go to the see-saw.
    """
    B = game.tensor if isinstance(game, Game) else np.asarray(game, dtype=np.float64)
    N = B.ndim
    beta, _ = classical_bias_exact(B)
    if model == GHZ:
        lhs, _ = ghz_bias_seesaw(B, d, restarts=restarts, seed=seed, **seesaw)
        sizes = f"N={N} n={B.shape} d={d}"
    elif model == SCHMIDT:
        alpha = np.full(d, 1 / math.sqrt(d)) if alpha is None else alpha
        lhs, _ = schmidt_bias_seesaw(B, alpha, restarts=restarts, seed=seed, **seesaw)
        sizes = f"N={N} n={B.shape} d={len(alpha)}"
    elif model == CLIQUEWISE:
        hypergraph = hypergraph if hypergraph is not None else triangle_with_pairs()
        lhs, _ = cliquewise_bias_seesaw(B, hypergraph, d, restarts=restarts, seed=seed, **seesaw)
        sizes = f"N={N} n={B.shape} d={d} edges={len(hypergraph.edges)}"
    else:
        raise UsageError(f"unknown model {model!r}")
    const, name = qc_gap_constant(N, model, hypergraph)
    anomaly, witness = "", ""
    if beta > 0:
        witness = f"observed_gap={lhs / beta:.9g}"
    elif lhs > 0:
        anomaly = "zero classical bias with positive entangled value"
    return VerificationReport(
        f"qcgap-{model.lower()}", trial, seed, sizes, lhs, beta, const, name, witness=witness, anomaly=anomaly
    )


def qc_gap_suite(trials, seed, model=SCHMIDT, n=2, d=2, n_players=3, restarts=4, tol=1e-10, max_iter=500):
    """QC-gap checks on seeded random games; Schmidt weights are random when model is SCHMIDT.

    The clique-wise model uses the triangle-plus-pairs hypergraph.  A looser
    see-saw tolerance only lowers the lhs, so the check stays sound.
    """

    def trial(t):
        rng = _trial_rng(seed, t)
        game = random_game(n_players, n, _trial_seed(rng))
        alpha = None
        if model == SCHMIDT:
            a = rng.random(d) + 1e-3
            alpha = a / np.linalg.norm(a)
        return verify_qc_gap(
            game, model, _trial_seed(rng), d=d, alpha=alpha, restarts=restarts, trial=t, tol=tol, max_iter=max_iter
        )

    return run_trials(trial, trials)


def schmidt_gap_suite(trials, seed, n_max=4, d_max=4, restarts=2):
    """Three-player check of γ* and Schmidt see-saw values against 2^2 K_G^C β.

    Question counts cycle through 2..n_max and dimensions through 2..d_max.
    """

    def trial(t):
        rng = _trial_rng(seed, t)
        n_t = 2 + t % (n_max - 1)
        d_t = 2 + (t // (n_max - 1)) % (d_max - 1)
        game = random_game(3, n_t, _trial_seed(rng))
        B = game.tensor
        beta, _ = classical_bias_exact(B)
        g, _ = gamma_star(B, d_t, restarts=restarts, seed=_trial_seed(rng))
        a = rng.random(d_t) + 1e-3
        s, _ = schmidt_bias_seesaw(B, a / np.linalg.norm(a), restarts=restarts, seed=_trial_seed(rng))
        return VerificationReport(
            "schmidtgap", t, seed, f"N=3 n={n_t} d={d_t}", max(g, s), beta, CONSTANTS.schmidt_gap(3),
            "schmidt_gap", witness=f"gamma={g:.9g} schmidt={s:.9g}",
        )

    return run_trials(trial, trials)


# ---------------------------------------------------------------------------
# Q-algebra criterion


def spectral_norm(T) -> float:
    return float(np.linalg.norm(T, 2))


def hermitian_double(T):
    """[[0, T], [T*, 0]]: Hermitian with the same spectral norm as T."""
    m = T.shape[0]
    out = np.zeros((2 * m, 2 * m), dtype=np.complex128)
    out[:m, m:] = T
    out[m:, :m] = T.conj().T
    return out


def schur_polynomial(A, matrices):
    """sum_I A[I] f_1(i_1) ∘ ... ∘ f_N(i_N) (entrywise products)."""
    A = np.asarray(A)
    N = A.ndim
    ops = [A, list(range(N))]
    for k, F in enumerate(matrices):
        ops += [np.asarray(F), [k, N, N + 1]]
    return np.einsum(*ops, [N, N + 1], optimize="greedy")


def verify_q_algebra(A, matrices, trial=0, seed=0):
    """Spectral norm of the Schur polynomial against 2^{(3N-5)/2} K_G^C ||A||_{∞,R}.

    ``matrices[k]`` has shape (n_k, m, m) and must hold spectral contractions.
    Non-Hermitian inputs are replaced by their Hermitian doubles, which
    leaves the lhs unchanged since doubling commutes with Schur products.
    """
    A = np.asarray(A, dtype=np.float64)
    mats = [np.asarray(F, dtype=np.complex128) for F in matrices]
    for F in mats:
        for f in F:
            if spectral_norm(f) > 1 + 1e-9:
                raise ValueError("Q-algebra inputs must be spectral-norm contractions")
    m = mats[0].shape[1]
    hermitian = all(np.allclose(f, f.conj().T, atol=1e-12) for F in mats for f in F)
    if not hermitian:
        mats = [np.stack([hermitian_double(f) for f in F]) for F in mats]
    lhs = spectral_norm(schur_polynomial(A, mats))
    rhs, _ = classical_bias_exact(A)
    N = A.ndim
    return VerificationReport(
        "qalgebra", trial, seed, f"N={N} n={A.shape} m={m}", lhs, rhs,
        CONSTANTS.schmidt_gap(N), "schmidt_gap", witness=f"doubled={int(not hermitian)}",
    )


def random_contraction(rng, m, hermitian=False):
    G = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    if hermitian:
        G = G + G.conj().T
    return G / spectral_norm(G) * rng.uniform(0.5, 1.0)


def q_algebra_suite(trials, seed, N_max=3, n_max=2, m_max=4):
    def trial(t):
        rng = _trial_rng(seed, t)
        N = int(rng.integers(1, N_max + 1))
        n = int(rng.integers(1, n_max + 1))
        m = int(rng.integers(1, m_max + 1))
        herm = bool(rng.integers(2))
        A = rng.standard_normal((n,) * N)
        mats = [np.stack([random_contraction(rng, m, herm) for _ in range(n)]) for _ in range(N)]
        return verify_q_algebra(A, mats, trial=t, seed=seed)

    return run_trials(trial, trials)


# ---------------------------------------------------------------------------
# graph-state functional


def graph_sign_tensor(spec: GraphStateSpec) -> np.ndarray:
    """S[s1, s2, s3] = (-1)^{|E(S_1 ∪ S_2 ∪ S_3)|} over local subset indices."""
    masks = [_subset_masks(spec, p) for p in spec.parts]
    union = masks[0][:, None, None] | masks[1][None, :, None] | masks[2][None, None, :]
    counts = _induced_edge_counts(spec.q, spec.edges)[union]
    return np.where(counts % 2 == 0, 1.0, -1.0)


def _graph_form(A, signs, F):
    return complex(np.einsum("abc,ia,jb,kc,ijk->", signs, F[0], F[1], F[2], A, optimize="greedy"))


def verify_graph_functional(spec: GraphStateSpec, n, trials, seed, ascent_sweeps=20):
    """|sum A[i,j,k] Φ_G(f1(i)⊗f2(j)⊗f3(k))| against 2^{q/2} 2^{k(3r-5)/2}(K_G^C)^k ||A||_{∞,R}
    with k = 4, r = 3 (three pairs plus a common triple).

    The lhs is the larger of a random unit-vector witness and the result of
    alternating unit-vector ascent from that witness.
    """
    if spec.q > 8 or n > 3:
        raise CapExceededError("graph functional suite is capped at q <= 8 and n <= 3")
    signs = graph_sign_tensor(spec)
    dims = spec.part_dims()
    const = 2 ** (spec.q / 2) * CONSTANTS.cliquewise_gap(4, 3)

    def trial(t):
        rng = _trial_rng(seed, t)
        A = rng.standard_normal((n, n, n))
        F = [_unit_rows(rng, n, dim, COMPLEX) for dim in dims]
        lhs_witness = abs(_graph_form(A, signs, F))
        best = lhs_witness
        subs = ["abc,jb,kc,ijk->ia", "abc,ia,kc,ijk->jb", "abc,ia,jb,ijk->kc"]
        for _ in range(ascent_sweeps):
            for l in range(3):
                others = [F[m] for m in range(3) if m != l]
                c = np.einsum(subs[l], signs, *others, A)
                norms = np.linalg.norm(c, axis=1, keepdims=True)
                F[l] = np.where(norms > 0, np.conj(c) / np.where(norms > 0, norms, 1), F[l])
            best = max(best, abs(_graph_form(A, signs, F)))
        rhs, _ = classical_bias_exact(A)
        return VerificationReport(
            "graphstate", t, seed, f"q={spec.q} parts={[len(p) for p in spec.parts]} n={n}", best, rhs,
            const, "graph_cliquewise_gap", witness=f"witness_lhs={lhs_witness:.6g}",
        )

    return run_trials(trial, trials)


def triangle_graph() -> GraphStateSpec:
    return GraphStateSpec(3, ((0, 1), (1, 2), (0, 2)), ((0,), (1,), (2,)))


def random_graph_spec(rng, q_max=8) -> GraphStateSpec:
    q = int(rng.integers(1, q_max + 1))
    edges = [(u, v) for u, v in itertools.combinations(range(q), 2) if rng.random() < 0.5]
    labels = rng.integers(0, 3, size=q)
    parts = tuple(tuple(int(v) for v in range(q) if labels[v] == l) for l in range(3))
    return GraphStateSpec(q, tuple(edges), parts)


def graph_identity_suite(trials, seed, q_max=8):
    """|Φ_G - 2^{q/2}(v1⊗v2⊗v3)·|Ψ_G>| on random graphs, partitions and vectors."""

    def trial(t):
        rng = _trial_rng(seed, t)
        spec = random_graph_spec(rng, q_max)
        vs = [_unit_rows(rng, 1, dim, COMPLEX)[0] for dim in spec.part_dims()]
        direct = graph_functional(spec, *vs, check=False)
        via_state = 2 ** (spec.q / 2) * graph_state_pairing(spec, *vs)
        return VerificationReport(
            "graphid", t, seed, f"q={spec.q}", abs(direct - via_state), 1e-10, 1.0, "identity", slack=0.0
        )

    return run_trials(trial, trials)


# ---------------------------------------------------------------------------
# Φ two-path agreement


def random_hypergraph(rng, n_max=4, e_max=3) -> Hypergraph:
    n = int(rng.integers(1, n_max + 1))
    n_edges = int(rng.integers(0, e_max + 1))
    edges = []
    for _ in range(n_edges):
        size = int(rng.integers(1, n + 1))
        edges.append(tuple(sorted(rng.choice(n, size=size, replace=False).tolist())))
    return Hypergraph(n, tuple(edges), allow_duplicates=True)


def verify_phi(trials, seed, d=2, e_max=3):
    """Agreement of the direct labeling sum for Φ with an independent route.

    Even trials use tensor-structured vectors and compare against the
    per-edge product; odd trials use unstructured vectors and compare
    against the factor-permutation route.
    """

    def trial(t):
        rng = _trial_rng(seed, t)
        h = random_hypergraph(rng, e_max=e_max)
        if t % 2 == 0:
            factors = [[_unit_rows(rng, 1, d, COMPLEX)[0] for _ in h.incidence(x)] for x in range(h.n_vertices)]
            vectors = [kron_all(f) for f in factors]
            other = phi_factored(h, d, factors)
            route = "factored"
        else:
            vectors = [_unit_rows(rng, 1, d ** len(h.incidence(x)), COMPLEX)[0] for x in range(h.n_vertices)]
            other = phi_via_rearrangement(h, d, vectors)
            route = "rearranged"
        direct = phi_evaluate(h, d, vectors)
        return VerificationReport(
            "phi", t, seed, f"N={h.n_vertices} E={len(h.edges)} d={d}", abs(direct - other), 1e-10, 1.0,
            "identity", witness=route, slack=0.0,
        )

    return run_trials(trial, trials)
