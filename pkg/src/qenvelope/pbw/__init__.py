"""Quantized enveloping algebras at roots of unity as rewrite systems."""

from qenvelope.pbw.algebra import (
    SCHEMA_VERSION,
    LCharacter,
    PbwMonomial,
    QuantumAlgebra,
    ReducedAlgebra,
    complete_rewrite_system,
    count_character_lifts,
    counit_character,
    enumerate_normal_basis,
    expected_dimension,
    load_rewrite_system,
    normal_form,
    reduced_dimension,
    save_rewrite_system,
)
from qenvelope.pbw.ncpoly import NcElement
from qenvelope.pbw.presentation import (
    Alphabet,
    QuantumPresentation,
    UnsupportedRankError,
    check_supported,
    sign_twist,
    substitute,
)
from qenvelope.pbw.rewriting import CompletionError, RewriteSystem

__all__ = [
    "SCHEMA_VERSION",
    "Alphabet",
    "CompletionError",
    "LCharacter",
    "NcElement",
    "PbwMonomial",
    "QuantumAlgebra",
    "QuantumPresentation",
    "ReducedAlgebra",
    "RewriteSystem",
    "UnsupportedRankError",
    "check_supported",
    "complete_rewrite_system",
    "count_character_lifts",
    "counit_character",
    "enumerate_normal_basis",
    "expected_dimension",
    "load_rewrite_system",
    "normal_form",
    "reduced_dimension",
    "save_rewrite_system",
    "sign_twist",
    "substitute",
]
