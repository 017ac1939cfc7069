"""Finite actions, biactions and bands acting by set intersection and union.

Axiom checkers with witnesses, membership decided by homomorphisms into
F(1), and explicit set representations.
"""

from .axioms import check_axioms, transformation_monoid
from .core import (Action, Biaction, LimitError, SetBand, SetRepresentation, StructureError,
                   evaluate, full_algebra, full_prime_action)
from .generator import f1, horn_valid
from .homs import canonical_representation, enumerate_homs, is_member
from .words import normalize_word, words_equivalent

__version__ = "0.1.0"

__all__ = [
    "Action", "Biaction", "LimitError", "SetBand", "SetRepresentation", "StructureError",
    "canonical_representation", "check_axioms", "enumerate_homs", "evaluate", "f1",
    "full_algebra", "full_prime_action", "horn_valid", "is_member", "normalize_word",
    "transformation_monoid", "words_equivalent",
]
