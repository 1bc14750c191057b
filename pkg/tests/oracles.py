"""Brute-force reference computations, written without the package's internals."""

import itertools
import math

import numpy as np


def bias_by_play(sign, dist, answers):
    """Win minus lose probability when player k answers answers[k][question] in {+1,-1}."""
    total = 0.0
    for I in itertools.product(*[range(n) for n in np.shape(sign)]):
        prod = 1
        for k, i in enumerate(I):
            prod *= answers[k][i]
        total += dist[I] * (1 if prod == sign[I] else -1)
    return total


def brute_bias(M):
    """max over every player's ±1 vector of |sum_I M[I] prod_k x_k(i_k)| (no shortcuts)."""
    M = np.asarray(M)
    best = 0.0
    choices = [list(itertools.product((1, -1), repeat=n)) for n in M.shape]
    for xs in itertools.product(*choices):
        val = M
        for x in reversed(xs):
            val = val @ np.array(x, dtype=float)
        best = max(best, abs(val))
    return best


def gip_oracle(n, N):
    """Sign tensor of the generalized inner product from bit strings."""
    strings = [format(q, f"0{n}b") for q in range(2**n)]
    out = np.empty((2**n,) * N)
    for I in itertools.product(range(2**n), repeat=N):
        common = sum(all(strings[i][b] == "1" for i in I) for b in range(n))
        out[I] = (-1) ** common
    return out


def kron_list(mats):
    out = np.ones((1, 1)) if np.ndim(mats[0]) == 2 else np.ones(1)
    for m in mats:
        out = np.kron(out, m)
    return out


def expectation_dense(psi_flat, observables):
    """<ψ| O_1 ⊗ ... ⊗ O_N |ψ> with an explicit Kronecker product."""
    big = kron_list(observables)
    return complex(np.conj(psi_flat) @ big @ psi_flat)


def quantum_value_dense(M, psi_flat, obs_families):
    """|sum_I M[I] <ψ|⊗_k O_k(i_k)|ψ>| by looping over question tuples."""
    total = 0j
    for I in itertools.product(*[range(n) for n in np.shape(M)]):
        total += M[I] * expectation_dense(psi_flat, [obs_families[k][i] for k, i in enumerate(I)])
    return abs(total)


def cliquewise_state_oracle(n_vertices, edges, d):
    """Sum over edge labelings J of ⊗_x |J restricted to edges at x>, normalized."""
    inc = [[e for e, verts in enumerate(edges) if x in verts] for x in range(n_vertices)]
    dims = [d ** len(inc[x]) for x in range(n_vertices)]
    out = np.zeros(int(np.prod(dims)))
    for J in itertools.product(range(d), repeat=len(edges)):
        local = []
        for x in range(n_vertices):
            idx = 0
            for e in inc[x]:
                idx = idx * d + J[e]
            basis = np.zeros(dims[x])
            basis[idx] = 1
            local.append(basis)
        out += kron_list(local)
    return out / math.sqrt(d ** len(edges))


def graph_stabilizer(q, edges, v):
    """X_v ⊗ Z_{N(v)} as a dense matrix; vertex 0 is the leftmost factor."""
    X = np.array([[0, 1], [1, 0]])
    Z = np.diag([1, -1])
    nbrs = {u for e in edges for u in e if v in e and u != v}
    mats = [X if w == v else Z if w in nbrs else np.eye(2) for w in range(q)]
    return kron_list(mats)


def khintchine_oracle(c):
    c = list(c)
    total = sum(abs(sum(e * x for e, x in zip(eps, c))) for eps in itertools.product((1, -1), repeat=len(c)))
    return total / 2 ** len(c) / math.sqrt(sum(x * x for x in c))


def repeat_oracle(sign, dist, times):
    """XOR repetition by explicit question tuples: coordinate (i_1..i_L) flattened row-major."""
    sign, dist = np.asarray(sign), np.asarray(dist)
    n = sign.shape
    N = sign.ndim
    new_dims = tuple(nk**times for nk in n)
    s_out = np.empty(new_dims)
    p_out = np.empty(new_dims)
    for rounds in itertools.product(*[list(np.ndindex(*n)) for _ in range(times)]):
        idx = []
        for k in range(N):
            flat = 0
            for r in rounds:
                flat = flat * n[k] + r[k]
            idx.append(flat)
        s_out[tuple(idx)] = np.prod([sign[r] for r in rounds])
        p_out[tuple(idx)] = np.prod([dist[r] for r in rounds])
    return s_out, p_out
