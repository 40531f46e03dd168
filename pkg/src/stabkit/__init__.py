"""Normal forms and reductions for pure and mixed stabiliser states."""

from .array import (
    Gate,
    QubitPartition,
    StabiliserArray,
    Tableau,
    apply_cnot_columns,
    apply_column_op,
    column_transpose,
    entropy,
    format_array,
    parse_array,
    row_multiply,
    row_transpose,
    validate,
)
from .bipartite import BipartiteReport, cnfp, entanglement, full_normal_form
from .cnf import CnfResult, cnf1, negative_phase_normalize
from .errors import StabiliserError
from .generate import random_array
from .overlap import CompositeArray, DyadicScalar, Overlap, joint_cnf, overlap
from .pauli import Phase, PauliElement, SingleQubitOp
from .reduce import RrefResult, drop_dependent, ptrace, rank, rref

__version__ = "0.1.0"
