"""
Instance checks of Grothendieck-type inequalities
=================================================

Each suite compares a witnessed or see-saw lower bound (lhs) against an
exactly computed norm times a constant.  The smallest relative slack
shows how far the random instances stay from the constant.
"""

from xorgames import inequalities as lab


def tightest(reports):
    worst = max(reports, key=lambda r: r.lhs / (r.rhs * r.const) if r.rhs else 0)
    return worst.lhs / (worst.rhs * worst.const), worst


for name, reports in [
    ("tonge mixed N=3", lab.verify_tonge(3, 3, 3, 50, seed=1)),
    ("tonge real N=2", lab.verify_tonge(2, 4, 4, 50, seed=1, variant="REAL")),
    ("littlewood", lab.verify_littlewood(6, 6, 50, seed=1)),
    ("q-algebra", lab.q_algebra_suite(50, seed=1)),
    ("3-player gap", lab.schmidt_gap_suite(30, seed=1)),
    ("graph state", lab.verify_graph_functional(lab.triangle_graph(), 2, 10, seed=1)),
]:
    ratio, worst = tightest(reports)
    print(f"{name:16s} trials={len(reports)} violations={sum(not r.passed for r in reports)} "
          f"max lhs/(const*rhs)={ratio:.4f} [{worst.sizes}]")

# Khintchine: c = (1, 1) is the extremal vector
print("khintchine(1,1) =", lab.khintchine_ratio([1, 1]))
