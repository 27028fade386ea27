"""Certify string C-groups from finite presentations.

Coset enumeration gives a regular permutation image; stabilizer chains,
subgroup closures and a Smith normal form then check order, type,
intersection property, solvability and abelian invariants exactly.
"""

from .coset import (
    CosetTable,
    EnumerationLimits,
    LimitExceeded,
    abelianized_subgroup_relations,
    enumerate_cosets,
    is_normal,
)
from .families import BadParam, Type1Params, Type2Params
from .fpcore import GeneratorMap, Presentation, Word
from .perm import Permutation, PermutationGroup
from .sggi import Certificate, QuotientVerdict, certify, quotient_criterion, sggi_group
from .snf import IntMatrix, abelian_invariants, smith_normal_form
from .textformat import ParseError, format_presentation, parse_presentation

__all__ = [
    "BadParam", "Certificate", "CosetTable", "EnumerationLimits", "GeneratorMap", "IntMatrix",
    "LimitExceeded", "ParseError", "Permutation", "PermutationGroup", "Presentation",
    "QuotientVerdict", "Type1Params", "Type2Params", "Word", "abelian_invariants",
    "abelianized_subgroup_relations", "certify", "enumerate_cosets", "format_presentation",
    "is_normal", "parse_presentation", "quotient_criterion", "sggi_group", "smith_normal_form",
]
