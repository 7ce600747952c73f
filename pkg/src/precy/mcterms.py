"""Symbolic bookkeeping of the arity-5 Maurer-Cartan equation.

For a row of five input sorts, MC5 is a sum of compositions
``m3(.., m3(x_i, x_{i+1}, x_{i+2}), ..)``. Each composition is tagged with the
component types of its inner and outer operation. Only the tags matter
here, not the coefficients, so the analysis ignores the degree filter and
covers every formal composition.

Equation labels:

* ``pure-XX``: every term built from main operations uses two type-B ones;
* ``contains-Y``: every such term uses at least one type-A operation;
* ``secondary-only``: every term involves a secondary operation;
* ``mixed``: anything else (never happens; this is the separation property).
"""

from dataclasses import dataclass
from itertools import product

from precy.ainfinity import ComponentType, SortPattern, classify_component, degree_allowed
from precy.algebra import Sort
from precy.errors import InputShapeError

PURE_XX = "pure-XX"
CONTAINS_Y = "contains-Y"
SECONDARY_ONLY = "secondary-only"
MIXED = "mixed"


@dataclass(frozen=True)
class SymbolicTerm:
    position: int
    inner: SortPattern
    outer: SortPattern
    inner_type: ComponentType
    outer_type: ComponentType

    @property
    def is_main(self):
        return self.inner_type.is_main and self.outer_type.is_main

    @property
    def is_pure_xx(self):
        return self.inner_type is ComponentType.TYPE_B and self.outer_type is ComponentType.TYPE_B

    @property
    def degree_allowed(self):
        return degree_allowed(self.inner) and degree_allowed(self.outer)

    def render(self):
        slots = ["x1", "x2", "x3", "x4", "x5"]
        inner = f"m3[{self.inner_type.value}]({', '.join(slots[self.position:self.position + 3])})"
        args = slots[:self.position] + [inner] + slots[self.position + 3:]
        return f"m3[{self.outer_type.value}]({', '.join(args)}) -> {self.outer.output.value}"

    def to_dict(self):
        return {
            "position": self.position,
            "inner": str(self.inner),
            "outer": str(self.outer),
            "tags": [self.inner_type.value, self.outer_type.value],
            "degree_allowed": self.degree_allowed,
        }


def _label(terms):
    main = [t for t in terms if t.is_main]
    if not main:
        return SECONDARY_ONLY
    if all(t.is_pure_xx for t in main):
        return PURE_XX
    if all(not t.is_pure_xx for t in main):
        return CONTAINS_Y
    return MIXED


@dataclass(frozen=True)
class SymbolicEquation:
    pattern: SortPattern
    terms: tuple

    @property
    def main_terms(self):
        return tuple(t for t in self.terms if t.is_main)

    @property
    def label(self):
        return _label(self.terms)

    def for_output(self, sort):
        sort = Sort(sort)
        return SymbolicEquation(SortPattern(self.pattern.inputs, sort),
                                tuple(t for t in self.terms if t.outer.output is sort))

    def to_dict(self):
        return {
            "pattern": str(self.pattern),
            "label": self.label,
            "main_terms": len(self.main_terms),
            "terms": [t.to_dict() for t in self.terms],
        }


def enumerate_mc5_terms(pattern) -> SymbolicEquation:
    """All formal ``m3 o m3`` terms of MC5 on one row of input sorts."""
    if not isinstance(pattern, SortPattern):
        pattern = SortPattern.parse(pattern) if isinstance(pattern, str) else SortPattern(tuple(pattern))
    if pattern.arity != 5:
        raise InputShapeError(f"MC5 rows have 5 inputs, got {pattern.arity}")
    s = pattern.inputs
    terms = []
    for out in (Sort.ALG, Sort.DUAL):
        if pattern.output is not None and out is not pattern.output:
            continue
        for pos in range(3):
            for mid in (Sort.ALG, Sort.DUAL):
                inner = SortPattern(s[pos:pos + 3], mid)
                outer = SortPattern(s[:pos] + (mid,) + s[pos + 3:], out)
                terms.append(SymbolicTerm(pos, inner, outer,
                                          classify_component(inner), classify_component(outer)))
    return SymbolicEquation(SortPattern(s, pattern.output), tuple(terms))


def all_mc5_equations():
    """Equations for all 32 rows in lexicographic order (A before A*)."""
    return [enumerate_mc5_terms(SortPattern(row)) for row in product((Sort.ALG, Sort.DUAL), repeat=5)]


def pure_xx_rows():
    return [eq.pattern for eq in all_mc5_equations() if eq.label == PURE_XX]
