"""
Classical versus entangled bias of two small games
==================================================

CHSH (two players) and the Mermin/GHZ game (three players): exact
classical bias by enumeration, entangled bias by see-saw.
"""

import numpy as np

from xorgames.classical import classical_bias_exact
from xorgames.games import chsh, mermin
from xorgames.quantum import ghz_bias_seesaw, tsirelson_bias

g = chsh()
beta, witness = classical_bias_exact(g.tensor)
print("CHSH classical bias", beta, "answers", witness)

# two players: unit vectors of dimension min(n1, n2) + 1 are enough
tsirelson, _ = tsirelson_bias(g.tensor, restarts=8)
print("CHSH entangled bias", tsirelson, "vs 1/sqrt(2) =", 1 / np.sqrt(2))

g = mermin()
beta, witness = classical_bias_exact(g.tensor)
print("Mermin classical bias", beta, "answers", witness)

# a shared qubit GHZ state wins with certainty
value, strategy = ghz_bias_seesaw(g.tensor, d=2, restarts=8)
strategy.validate()
print("Mermin GHZ bias", value)
print("ratio", value / beta)
