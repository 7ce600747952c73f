from itertools import product

import pytest

from precy.ainfinity import classify_component
from precy.algebra import Sort
from precy.mcterms import (
    CONTAINS_Y,
    MIXED,
    PURE_XX,
    SECONDARY_ONLY,
    all_mc5_equations,
    enumerate_mc5_terms,
    pure_xx_rows,
)


def test_pure_rows_are_exactly_the_alternating_ones():
    assert [str(p) for p in pure_xx_rows()] == ["A,A*,A,A*,A", "A*,A,A*,A,A*"]


def test_examples():
    assert enumerate_mc5_terms("A*,A,A*,A,A*").label == PURE_XX
    assert enumerate_mc5_terms("A,A*,A,A*,A").label == PURE_XX
    for pos in range(5):
        row = [Sort.ALG] * 5
        row[pos] = Sort.DUAL
        assert enumerate_mc5_terms(row).label == SECONDARY_ONLY


def expected_label(row):
    """Main terms exist only with two or three A inputs; alternation makes them pure."""
    count = sum(s is Sort.ALG for s in row)
    if count not in (2, 3):
        return SECONDARY_ONLY
    alternating = all(row[i] is not row[i + 1] for i in range(4))
    return PURE_XX if alternating else CONTAINS_Y


def test_labels_for_all_rows():
    eqs = all_mc5_equations()
    assert len(eqs) == 32
    for eq in eqs:
        assert eq.label == expected_label(eq.pattern.inputs)
        for out in (Sort.ALG, Sort.DUAL):
            assert eq.for_output(out).label != MIXED


def test_terms_are_consistent_with_row():
    for eq in all_mc5_equations():
        assert len(eq.terms) == 12
        row = eq.pattern.inputs
        for t in eq.terms:
            assert t.inner.inputs == row[t.position:t.position + 3]
            assert t.outer.inputs == row[:t.position] + (t.inner.output,) + row[t.position + 3:]
            assert t.inner_type is classify_component(t.inner)
            assert t.outer_type is classify_component(t.outer)
            if t.is_main:
                assert t.degree_allowed


def test_rejects_wrong_arity():
    with pytest.raises(ValueError):
        enumerate_mc5_terms("A,A*,A")


def test_render_and_dict():
    eq = enumerate_mc5_terms("A,A*,A,A*,A")
    main = eq.main_terms
    assert main and all("TypeB" in t.render() for t in main)
    d = eq.to_dict()
    assert d["label"] == PURE_XX and d["main_terms"] == len(main)


def test_counts():
    labels = [eq.label for eq in all_mc5_equations()]
    assert labels.count(PURE_XX) == 2
    assert labels.count(CONTAINS_Y) == 18
    assert labels.count(SECONDARY_ONLY) == 12
    assert all(len(r) == 5 for r in product("ab", repeat=5))
