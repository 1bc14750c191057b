"""
Repeating the Mermin game
=========================

The entangled bias of Mermin^{⊗ℓ} stays at 1, and since the entangled
bias is at most 4·K_G^C times the classical one, the classical bias of
the repeated game cannot fall below 1/(4·K_G^C) either.
"""

from xorgames.classical import classical_bias_exact, classical_bias_heuristic
from xorgames.games import mermin
from xorgames.inequalities import CONSTANTS
from xorgames.quantum import ghz_bias_seesaw
from xorgames.tensor_core import xor_repeat

floor = 1 / CONSTANTS.schmidt_gap(3)
print("floor 1/(4 K_G^C) =", round(floor, 4))

for ell in (1, 2, 3):
    M = xor_repeat(mermin(), ell).tensor
    # GHZ state of local dimension 2^ell = ell copies of the qubit GHZ state
    quantum, _ = ghz_bias_seesaw(M, 2**ell, restarts=8)
    low, _ = classical_bias_heuristic(M, restarts=8)
    exact, _ = classical_bias_exact(M)
    print(f"ell={ell} shape={M.shape} entangled={quantum:.6f} classical(heuristic)={low} classical(exact)={exact}")
