"""Command-line front end: ``xorgames <command> ...``.

Every command prints line-oriented ``key=value`` records.  Exit status is 0
on success, 1 when a verification suite reports a violation, and 2 for
usage, file, parse or cap errors (one diagnostic line on stderr).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import comm, inequalities as lab
from .classical import classical_bias_exact, classical_bias_heuristic
from .entanglement import read_graph, read_hypergraph, triangle_with_pairs
from .errors import CapExceededError, UsageError, XorGamesError
from .games import make_game
from .quantum import cliquewise_bias_seesaw, gamma_star, ghz_bias_seesaw, schmidt_bias_seesaw, tsirelson_bias
from .tensor_core import format_game, read_game, xor_repeat

SUITES = ("tonge", "littlewood", "khintchine", "qcgap", "qalgebra", "graphstate", "phi", "graphid", "schmidtgap")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text!r}")
    return v


def _alpha(text):
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated weights, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="xorgames", description="XOR game biases, inequality checks and communication bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    game = sub.add_parser("game", help="construct a game file")
    gsub = game.add_subparsers(dest="action", required=True, parser_class=_Parser)
    make = gsub.add_parser("make")
    make.add_argument("name", choices=["chsh", "mermin", "gip", "random"])
    make.add_argument("--n", type=_positive_int, default=None, help="bits (gip) or questions per player (random)")
    make.add_argument("--players", type=_positive_int, default=None)
    make.add_argument("--seed", type=_nonneg_int, default=0)
    make.add_argument("--support", type=_positive_int, default=None, help="number of support cells (random)")
    make.add_argument("--out", default=None)

    bias = sub.add_parser("bias", help="classical or entangled bias of a game file")
    bsub = bias.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    bc = bsub.add_parser("classical")
    bc.add_argument("file")
    mode = bc.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    bc.add_argument("--restarts", type=_positive_int, default=8)
    bc.add_argument("--seed", type=_nonneg_int, default=0)
    bq = bsub.add_parser("quantum")
    bq.add_argument("file")
    bq.add_argument("--model", required=True, choices=["tsirelson", "ghz", "schmidt", "cliquewise", "gamma-star"])
    bq.add_argument("--dim", type=_positive_int, default=2)
    bq.add_argument("--alpha", type=_alpha, default=None, help="Schmidt weights, comma-separated")
    bq.add_argument("--hypergraph", default=None, help="hypergraph file (default: triangle plus pairs)")
    bq.add_argument("--restarts", type=_positive_int, default=8)
    bq.add_argument("--seed", type=_nonneg_int, default=0)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--trials", type=_positive_int, default=100)
    v.add_argument("--seed", type=_nonneg_int, default=0)
    v.add_argument("--players", type=_positive_int, default=None)
    v.add_argument("--n", type=_positive_int, default=None, help="(maximum) question count or vector length")
    v.add_argument("--dim", type=_positive_int, default=None, help="(maximum) vector, state or matrix dimension")
    v.add_argument("--variant", default=None, help="tonge: mixed|real|complex; littlewood: pm|field-matched")
    v.add_argument("--model", default="schmidt", choices=["ghz", "schmidt", "cliquewise"])
    v.add_argument("--graph", default=None, help="graph file for the graphstate suite (default: triangle)")

    cc = sub.add_parser("ccbound", help="generalized-discrepancy communication lower bound")
    cc.add_argument("file")
    cc.add_argument("--against", default=None, help="game file whose signs and distribution are correlated against")
    cc.add_argument("--eps", type=_nonneg_float, required=True)
    cc.add_argument("--quantum", action="store_true", help="clique-wise quantum NOF bound")
    cc.add_argument("--cliques", type=_positive_int, default=1)
    cc.add_argument("--bns", type=_positive_int, default=None, help="also print n/2^{2N} for n-bit GIP")

    rep = sub.add_parser("repeat", help="XOR repetition of a game file")
    rep.add_argument("file")
    rep.add_argument("--times", type=_positive_int, required=True)
    rep.add_argument("--out", default=None)
    return p


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation; numeric flags are validated positive by the parser."""

    command: str
    args: argparse.Namespace


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _fmt(v):
    return repr(float(v))


def _cmd_game(a):
    params = {"seed": a.seed}
    if a.n is not None:
        params["n"] = a.n
    if a.players is not None:
        params["players"] = a.players
    if a.support is not None:
        params["support"] = a.support
    _emit(format_game(make_game(a.name, **params)), a.out)
    return 0


def _cmd_bias(a):
    game = read_game(a.file)
    B = game.tensor
    if a.kind == "classical":
        if a.heuristic:
            value, w = classical_bias_heuristic(B, restarts=a.restarts, seed=a.seed)
            mode = "heuristic"
        else:
            value, w = classical_bias_exact(B)
            mode = "exact"
        print(f"value={_fmt(value)} witness={w} mode={mode}")
        return 0
    if a.model == "tsirelson":
        value, _ = tsirelson_bias(B, restarts=a.restarts, seed=a.seed)
    elif a.model == "ghz":
        value, _ = ghz_bias_seesaw(B, a.dim, restarts=a.restarts, seed=a.seed)
    elif a.model == "schmidt":
        alpha = a.alpha if a.alpha is not None else (1 / np.sqrt(a.dim),) * a.dim
        value, _ = schmidt_bias_seesaw(B, alpha, restarts=a.restarts, seed=a.seed)
    elif a.model == "cliquewise":
        h = read_hypergraph(a.hypergraph) if a.hypergraph else triangle_with_pairs()
        value, _ = cliquewise_bias_seesaw(B, h, a.dim, restarts=a.restarts, seed=a.seed)
    else:
        value, _ = gamma_star(B, a.dim, restarts=a.restarts, seed=a.seed)
    print(f"value={_fmt(value)} model={a.model} dim={a.dim} restarts={a.restarts} seed={a.seed} lower_bound=1")
    return 0


def _run_suite(a):
    T, S = a.trials, a.seed
    if a.suite == "tonge":
        variant = {"mixed": lab.MIXED, "real": "REAL", "complex": "COMPLEX"}.get(a.variant or "mixed")
        if variant is None:
            raise UsageError(f"unknown tonge variant {a.variant!r}")
        return lab.verify_tonge(a.players or 3, a.n or 4, a.dim or 4, T, S, variant)
    if a.suite == "littlewood":
        variant = {"pm": lab.COMPLEX_PM, "field-matched": lab.FIELD_MATCHED}.get(a.variant or "pm")
        if variant is None:
            raise UsageError(f"unknown littlewood variant {a.variant!r}")
        return lab.verify_littlewood(a.n or 6, a.dim or 6, T, S, variant)
    if a.suite == "khintchine":
        return lab.verify_khintchine(T, S, n_max=a.n or 12)
    if a.suite == "qcgap":
        return lab.qc_gap_suite(T, S, a.model.upper(), n=a.n or 2, d=a.dim or 2, n_players=a.players or 3)
    if a.suite == "qalgebra":
        return lab.q_algebra_suite(T, S, N_max=a.players or 3, n_max=a.n or 2, m_max=a.dim or 4)
    if a.suite == "graphstate":
        spec = read_graph(a.graph) if a.graph else lab.triangle_graph()
        return lab.verify_graph_functional(spec, a.n or 3, T, S)
    if a.suite == "phi":
        return lab.verify_phi(T, S, d=a.dim or 2)
    if a.suite == "graphid":
        return lab.graph_identity_suite(T, S, q_max=a.n or 8)
    return lab.schmidt_gap_suite(T, S, n_max=a.n or 4, d_max=a.dim or 4)


def _cmd_verify(a):
    reports = _run_suite(a)
    for r in reports:
        print(r.line())
    violations = sum(not r.passed for r in reports)
    print(f"summary=1 suite={a.suite} trials={len(reports)} violations={violations}")
    return 1 if violations else 0


def _cmd_ccbound(a):
    target = read_game(a.file)
    A = target.sign.astype(np.float64)
    if a.against:
        other = read_game(a.against)
        B, pi, against = other.sign.astype(np.float64), other.dist, a.against
    else:
        B, pi, against = A, target.dist, a.file
    names = (a.file, against, against)
    if a.quantum:
        rec = comm.cliquewise_quantum_bound(A, B, pi, a.eps, k=a.cliques, names=names)
    else:
        rec = comm.gen_disc_bound(A, B, pi, a.eps, names=names)
    print(rec.line())
    if a.bns is not None:
        print(f"bns={_fmt(comm.bns_value(a.bns, A.ndim))} n={a.bns} players={A.ndim}")
    return 0


def _cmd_repeat(a):
    _emit(format_game(xor_repeat(read_game(a.file), a.times)), a.out)
    return 0


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(args.command, args)
        handler = {
            "game": _cmd_game,
            "bias": _cmd_bias,
            "verify": _cmd_verify,
            "ccbound": _cmd_ccbound,
            "repeat": _cmd_repeat,
        }[cfg.command]
        return handler(cfg.args)
    except (XorGamesError, OSError, ValueError, CapExceededError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
