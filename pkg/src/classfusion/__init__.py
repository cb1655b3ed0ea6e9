"""Exact character-theoretic class fusion toolkit.

Determines and verifies how conjugacy classes of a subgroup fuse into an
ambient group, from character-table data plus a small set of measured
element facts: exact cyclotomic arithmetic, table validation, a complete
backtracking fusion search, fact-based identification and power-map
closure deduction, and brute-force permutation models as an independent
oracle.
"""

from .chartab import CharacterTable, ClassInfo, scalar_product, validate
from .cyclo import Cyclotomic, conj, galois, make, value_from_json, value_to_json, zeta
from .data import load_table
from .facts import (
    ClassSetConclusion,
    FusionFact,
    apply_facts,
    closure_deduction,
    facts_diff,
    identify_class,
    load_facts,
)
from .fusion import (
    FusionMap,
    SearchOptions,
    decomposition_test,
    init_candidates,
    propagate,
    search,
    verify_fusion,
)
from .groupcore import (
    PermGroup,
    Permutation,
    build_affine,
    build_projective,
    check_relators,
    fusion_oracle,
    match_classes,
    oracle_contained,
)
from .mmword import MmWord, concat, load_word_file, parse

__version__ = "0.1.0"

__all__ = [
    "CharacterTable", "ClassInfo", "ClassSetConclusion", "Cyclotomic",
    "FusionFact", "FusionMap", "MmWord", "PermGroup", "Permutation",
    "SearchOptions", "apply_facts", "build_affine", "build_projective",
    "check_relators", "closure_deduction", "concat", "conj",
    "decomposition_test", "facts_diff", "fusion_oracle", "galois",
    "identify_class", "init_candidates", "load_facts", "load_table",
    "load_word_file", "make", "match_classes", "oracle_contained", "parse",
    "propagate", "scalar_product", "search", "validate", "value_from_json",
    "value_to_json", "verify_fusion", "zeta",
]
