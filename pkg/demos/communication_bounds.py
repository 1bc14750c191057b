"""
Communication lower bounds from the bias
========================================

Generalized discrepancy turns a small bias into a lower bound on
communication.  The clique-wise quantum bound halves it and subtracts
an explicit constant that dominates at these sizes.
"""

from xorgames.classical import classical_bias_exact
from xorgames.comm import bns_value, cliquewise_quantum_bound, gen_disc_bound, nof_discrepancy_direct, nof_lift
from xorgames.games import chsh, gip, mermin

g = chsh()
print(gen_disc_bound(g.sign, g.sign, g.dist, eps=0).line())

for n in (1, 2, 3):
    g = gip(n, 3)
    rec = gen_disc_bound(g.sign, None, g.dist, eps=0)
    q = cliquewise_quantum_bound(g.sign, None, g.dist, eps=0, k=1)
    print(f"gip n={n}: bias={rec.bias:.6f} bits={rec.raw:.4f} quantum raw={q.raw:.4f} "
          f"(constant {q.additive_constant}) n/2^(2N)={bns_value(n, 3)}")

# number-on-the-forehead: the lifted tensor's bias is the NOF discrepancy
m = mermin()
f, p = nof_lift(m)
print("lifted shape", f.shape, "bias", classical_bias_exact(f * p)[0], "direct", nof_discrepancy_direct(m.sign, m.dist))
