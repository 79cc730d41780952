"""Coverings of uniform hypergraphs from permutation voltages and their spectral invariants."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, ConvergenceError, ParseError, PreconditionError
from .formats import parse_hypergraph, parse_voltage, serialize_hypergraph, serialize_voltage
from .hypergraph import Hypergraph, incidence_graph, incidence_matrix, is_connected, is_covering_projection
from .invariants import (
    SignedHypergraph,
    covering_stabilizing_index,
    cyclic_index,
    signed_hypergraph,
    stabilizing_index,
    twisted_incidence,
    verify_block_decomposition,
)
from .matrix import IntegerMatrix
from .permutation import Permutation
from .tensor import AdjacencyTensorView, eigen_residual, spectral_radius, tensor_apply, verify_lift_identities
from .voltage import VoltageAssignment, derive, switch, tree_gauge
from .zmod import integer_snf, kernel_count_zm, solve_linear_zm, zm_invariant_divisors
