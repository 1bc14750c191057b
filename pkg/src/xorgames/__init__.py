"""Multiplayer XOR games: classical and entangled biases, Grothendieck-type
inequality checks, and communication lower bounds."""

from .classical import ClassicalStrategy, classical_bias_exact, classical_bias_heuristic, complex_norm_heuristic, norm_inf
from .comm import LowerBoundRecord, cliquewise_quantum_bound, gen_disc_bound, nof_lift
from .entanglement import (
    GraphStateSpec,
    Hypergraph,
    SchmidtCoefficients,
    build_cliquewise_state,
    ghz_state,
    graph_functional,
    graph_state,
    phi_evaluate,
    schmidt_decompose,
    schmidt_state,
)
from .errors import CapExceededError, FormatError, ShapeError, UsageError, XorGamesError
from .games import chsh, gip, make_game, mermin, random_game
from .inequalities import CONSTANTS, ConstantsTable, VerificationReport, khintchine_ratio
from .quantum import (
    ObservableStrategy,
    cliquewise_bias_seesaw,
    evaluate_strategy,
    gamma_star,
    ghz_bias_seesaw,
    schmidt_bias_seesaw,
    tsirelson_bias,
)
from .tensor_core import COMPLEX, REAL, Game, inner_product, parse_game, format_game, read_game, write_game, xor_product, xor_repeat

__version__ = "0.1.0"
