"""Exact verification of double Poisson brackets as cyclic A-infinity structures.

The package converts between double brackets on a finite-dimensional
associative algebra ``A`` and type-B ternary operations on ``A + A*``,
checks both sides exhaustively over exact rationals, and induces the
Poisson bracket on representation spaces.
"""

from precy.algebra import (
    AssocAlgebra,
    ExtElement,
    ExtIndex,
    Sort,
    check_associativity,
    check_m2_cyclicity,
    multiply,
    pairing,
    trivial_extension_product,
)
from precy.ainfinity import TernaryOperation, check_cyclic_invariance, check_maurer_cartan
from precy.double_poisson import DoubleBracket, bracket_from_m3, m3_from_bracket, verify_correspondence
from precy.report import CheckReport

__all__ = [
    "AssocAlgebra",
    "CheckReport",
    "DoubleBracket",
    "TernaryOperation",
    "bracket_from_m3",
    "check_cyclic_invariance",
    "check_maurer_cartan",
    "m3_from_bracket",
    "verify_correspondence",
    "ExtElement",
    "ExtIndex",
    "Sort",
    "check_associativity",
    "check_m2_cyclicity",
    "multiply",
    "pairing",
    "trivial_extension_product",
]

__version__ = "0.1.0"
