"""Exact Drazin and group inverses over the Gaussian rationals.

Everything is computed with ``fractions.Fraction`` pairs, so results are
exact and every equality check is literal. The ``theorems`` module carries
closed-form group inverses for three anti-triangular block layouts; the
``generators`` module draws seeded random instances and checks the closed
forms against the from-scratch computation.
"""

from .scalars import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    ScalarParseError,
    parse_scalar,
)
from .matrices import (
    Matrix,
    NotIdempotent,
    PierceSplit,
    ShapeMismatch,
    SingularMatrix,
    column_space_basis,
    inverse,
    kernel_basis,
    pierce_split,
    rank,
    rref,
)
from .ginverse import (
    DrazinResult,
    NotGroupInvertible,
    block_triangular_drazin,
    cline,
    drazin,
    drazin_index,
    group_inverse,
)
from .theorems import (
    SHAPE_FOR_THEOREM,
    THEOREM_IDS,
    BlockGroupInverse,
    BlockShape,
    Condition,
    ConditionReport,
    HypothesisViolated,
    assemble_M,
    block_group_inverse,
    check_conditions,
    cor22_group_inverse,
    cor24_group_inverse,
    cor25_group_inverse,
    cor32_group_inverse,
    cor33_group_inverse,
    cor34_group_inverse,
    thm21_group_inverse,
    thm23_group_inverse,
    thm31_group_inverse,
)
from .generators import (
    GenerationExhausted,
    GenSpec,
    Trial,
    Verdict,
    VerificationReport,
    gen_group_invertible,
    gen_invertible,
    gen_pair,
    run_campaign,
    verify_instance,
)

__version__ = "0.1.0"

__all__ = [
    "I",
    "ONE",
    "ZERO",
    "GaussianRational",
    "ScalarParseError",
    "parse_scalar",
    "Matrix",
    "NotIdempotent",
    "PierceSplit",
    "ShapeMismatch",
    "SingularMatrix",
    "column_space_basis",
    "inverse",
    "kernel_basis",
    "pierce_split",
    "rank",
    "rref",
    "DrazinResult",
    "NotGroupInvertible",
    "block_triangular_drazin",
    "cline",
    "drazin",
    "drazin_index",
    "group_inverse",
    "SHAPE_FOR_THEOREM",
    "THEOREM_IDS",
    "BlockGroupInverse",
    "BlockShape",
    "Condition",
    "ConditionReport",
    "HypothesisViolated",
    "assemble_M",
    "block_group_inverse",
    "check_conditions",
    "cor22_group_inverse",
    "cor24_group_inverse",
    "cor25_group_inverse",
    "cor32_group_inverse",
    "cor33_group_inverse",
    "cor34_group_inverse",
    "thm21_group_inverse",
    "thm23_group_inverse",
    "thm31_group_inverse",
    "GenerationExhausted",
    "GenSpec",
    "Trial",
    "Verdict",
    "VerificationReport",
    "gen_group_invertible",
    "gen_invertible",
    "gen_pair",
    "run_campaign",
    "verify_instance",
    "__version__",
]
