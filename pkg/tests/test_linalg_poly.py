import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from precy.errors import InputShapeError
from precy.linalg import det, identity, inverse, matmul, nullspace_sparse, rank, rref_sparse
from precy.poly import CoordPoly

small = st.integers(-4, 4)


def leibniz_det(m):
    """Permutation-sum determinant, used as an independent oracle."""
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction((-1) ** inversions)
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_inverse_rank(m):
    n = len(m)
    d = det(m)
    assert d == leibniz_det(m)
    assert (rank(m) == n) == (d != 0)
    if d:
        assert matmul(m, inverse(m)) == identity(n)
    else:
        with pytest.raises(ZeroDivisionError):
            inverse(m)


@given(st.integers(1, 6).flatmap(lambda c: st.lists(
    st.dictionaries(st.integers(0, c - 1), small, max_size=c), max_size=5).map(lambda rows: (rows, c))))
def test_nullspace(data):
    rows, ncols = data
    basis = nullspace_sparse(rows, ncols)
    reduced, pivots = rref_sparse(rows, ncols)
    assert len(basis) + len(pivots) == ncols
    for vec in basis:
        for r in rows:
            assert sum(v * vec.get(c, 0) for c, v in r.items()) == 0


def test_inverse_shape_error():
    with pytest.raises(InputShapeError):
        inverse([[1, 2]])


def random_poly(rng, nvars=3, terms=4):
    out = CoordPoly.const(rng.randint(-3, 3))
    for _ in range(terms):
        m = CoordPoly.const(rng.randint(-3, 3))
        for _ in range(rng.randint(1, 3)):
            m = m * CoordPoly.var(rng.randrange(nvars))
        out = out + m
    return out


@given(st.integers(0, 10 ** 6))
def test_poly_ring_operations_commute_with_evaluation(seed):
    rng = random.Random(seed)
    f, g = random_poly(rng), random_poly(rng)
    pt = {v: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for v in range(3)}
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)
    assert (f - g).evaluate(pt) == f.evaluate(pt) - g.evaluate(pt)
    assert f * g == g * f and (f - f).is_zero()
    # product rule and a finite-difference-free check of the derivative on a monomial basis
    for v in range(3):
        assert (f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v)


def test_poly_basics():
    x, y = CoordPoly.var("x"), CoordPoly.var("y")
    p = x * x * y + 2
    assert p.degree() == 3 and CoordPoly().degree() == -1
    assert p.variables() == ["x", "y"]
    assert p.derivative("x") == 2 * x * y
    assert p.evaluate({"x": 2, "y": 3}) == 14
    assert p.evaluate(lambda v: 1) == 3
    assert CoordPoly.const(0) == 0 and not CoordPoly.const(0)
    assert hash(x + y) == hash(y + x)
    assert 1 - x == -(x - 1)
