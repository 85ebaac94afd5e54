"""Exact cohomology of homogeneous vector bundles on Grassmannians."""

from .weights import (
    BlockWeight,
    FullWeight,
    GrassContext,
    dual_weight,
    full_weight,
    is_globally_generated,
    twist,
)
from .dims import block_rank, sl_dim
from .expr import (
    THETA,
    DirectSum,
    Dual,
    Expr,
    Irr,
    Line,
    Q,
    S,
    Sym,
    Tensor,
    Twist,
    Wedge,
    parse_expr,
    to_text,
)
from .schur import (
    Character,
    Decomposition,
    decompose_character,
    evaluate,
    gt_weights,
    lr_tensor,
    sym_power,
    wedge_power,
)
from .bott import bott_irreducible, cohomology
from .koszul import (
    KoszulTable,
    TargetKind,
    Verdict,
    analyze,
    build_table,
    euler_restriction,
    hilbert_series,
)
from .screens import (
    ConditionWitness,
    ScreenReport,
    enumerate_lemma54,
    find_witness_41,
    find_witness_5,
    find_witnesses_41,
    find_witnesses_5,
    screen,
)
from .theorems import (
    CrossReport,
    TheoremReport,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    cross_validate,
)

__all__ = [
    "BlockWeight",
    "Character",
    "ConditionWitness",
    "CrossReport",
    "Decomposition",
    "DirectSum",
    "Dual",
    "Expr",
    "FullWeight",
    "GrassContext",
    "Irr",
    "KoszulTable",
    "Line",
    "Q",
    "S",
    "ScreenReport",
    "Sym",
    "THETA",
    "TargetKind",
    "Tensor",
    "TheoremReport",
    "Twist",
    "Verdict",
    "Wedge",
    "analyze",
    "block_rank",
    "bott_irreducible",
    "build_table",
    "check_theorem1",
    "check_theorem2",
    "check_theorem3",
    "cohomology",
    "cross_validate",
    "decompose_character",
    "dual_weight",
    "enumerate_lemma54",
    "euler_restriction",
    "evaluate",
    "find_witness_41",
    "find_witness_5",
    "find_witnesses_41",
    "find_witnesses_5",
    "full_weight",
    "gt_weights",
    "hilbert_series",
    "is_globally_generated",
    "lr_tensor",
    "parse_expr",
    "screen",
    "sl_dim",
    "sym_power",
    "to_text",
    "twist",
    "wedge_power",
]
