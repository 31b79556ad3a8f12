"""Exact global-defensive-alliance numbers for lexicographic products of
paths and cycles: closed forms, a feasible-sequence DP, and two
exhaustive oracles, mutually cross-checked."""

__version__ = "0.1.0"

from .errors import (
    GdaLexError,
    InfeasibleError,
    InputError,
    PreconditionError,
    UnsupportedSizeError,
)
from .graphs import (
    FactorSpec,
    ProductSpec,
    VertexId,
    closed_neighborhood,
    degree,
    factor,
    g1_neighbors,
    product,
    vertices,
)
from .alliance import (
    ColumnSet,
    PartSequence,
    column_profile,
    full_column_set,
    is_defended,
    is_feasible,
    is_gda,
    profile_parts,
    rotations_of,
    spectrum,
    witness_from_sequence,
    witness_table,
)
from .oracle import (
    GammaResult,
    ValueTable,
    cached_value_table,
    compute_value_table,
    min_gda_columns,
    min_gda_subsets,
)
from .seqdp import SequenceValueContext, min_sequence_value, paper_max_part, sequence_value
from .closed_form import (
    candidate_sequences,
    combo_of,
    formula_value_table,
    gamma,
    gamma_m3,
    gamma_min_of_four,
    gamma_sequence_dp,
    gamma_small,
    gamma_via_thresholds,
    thresholds,
)

__all__ = [
    "GdaLexError", "InfeasibleError", "InputError", "PreconditionError",
    "UnsupportedSizeError",
    "FactorSpec", "ProductSpec", "VertexId", "closed_neighborhood", "degree",
    "factor", "g1_neighbors", "product", "vertices",
    "ColumnSet", "PartSequence", "column_profile", "full_column_set",
    "is_defended", "is_feasible", "is_gda", "profile_parts", "rotations_of",
    "spectrum", "witness_from_sequence", "witness_table",
    "GammaResult", "ValueTable", "cached_value_table", "compute_value_table",
    "min_gda_columns", "min_gda_subsets",
    "SequenceValueContext", "min_sequence_value", "paper_max_part", "sequence_value",
    "candidate_sequences", "combo_of", "formula_value_table", "gamma", "gamma_m3",
    "gamma_min_of_four", "gamma_sequence_dp", "gamma_small", "gamma_via_thresholds",
    "thresholds",
]
