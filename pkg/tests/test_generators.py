import random

from precy import fixtures as fx
from precy.ainfinity import (
    TYPE_B_PATTERNS,
    check_cyclic_invariance,
    check_maurer_cartan,
    check_mc_arity,
    project_type_B,
)
from precy.double_poisson import (
    DoubleBracket,
    check_antisymmetry,
    check_double_jacobi,
    check_leibniz_outer,
)
from precy.generators import (
    antisymmetry_mutation,
    embed_bracket,
    jacobi_mutation,
    leibniz_mutation,
    leibniz_space,
    padded_family_algebra,
    padded_m3_family,
    random_allowed_m3,
    random_valid_bracket,
    type_a_padding,
)


def test_leibniz_space_members_pass_linear_axioms():
    for alg in fx.extra_algebras():
        for vec in leibniz_space(alg):
            D = DoubleBracket(alg, vec)
            assert check_antisymmetry(D) and check_leibniz_outer(D)


def test_leibniz_space_dimensions():
    assert len(leibniz_space(fx.dual_numbers())) == 1
    assert len(leibniz_space(fx.k_times_k())) == 1
    # on a zero-product algebra every antisymmetric tensor is Leibniz: n^4 / 2 free pairs, n^2 fixed slots
    n = 2
    fixed = n * n
    assert len(leibniz_space(fx.zero_product(n))) == (n ** 4 - fixed) // 2


def test_generators_produce_their_categories():
    rng = random.Random(0)
    for alg in fx.extra_algebras():
        D = random_valid_bracket(alg, rng)
        assert check_antisymmetry(D) and check_leibniz_outer(D) and check_double_jacobi(D)
        A = antisymmetry_mutation(D, rng)
        assert not check_antisymmetry(A)
        J = jacobi_mutation(alg, rng)
        if J is not None:
            assert check_antisymmetry(J) and check_leibniz_outer(J) and not check_double_jacobi(J)
        L = leibniz_mutation(alg, rng)
        if L is not None:
            assert check_antisymmetry(L) and check_double_jacobi(L) and not check_leibniz_outer(L)


def test_jacobi_mutations_absent_where_leibniz_space_is_a_line():
    rng = random.Random(1)
    for alg in (fx.dual_numbers(), fx.k_times_k()):
        assert jacobi_mutation(alg, rng, attempts=50) is None


def test_padding_is_cyclic_type_a_and_vanishes_in_compositions():
    alg = padded_family_algebra(fx.dual_numbers())
    Y = type_a_padding(alg.dim, 3, 2, 4)
    assert Y.patterns() and not set(Y.patterns()) & set(TYPE_B_PATTERNS)
    assert check_cyclic_invariance(alg, Y)
    assert all(r.passed for r in check_maurer_cartan(alg, Y).values())


def test_padded_family_passes_and_projects():
    fam = padded_m3_family(8, 3, [fx.dual_numbers(), fx.k_cubed()])
    assert len(fam) == 8
    for alg, D, m3 in fam:
        assert check_cyclic_invariance(alg, m3)
        assert all(r.passed for r in check_maurer_cartan(alg, m3).values())
        assert project_type_B(m3) != m3
        assert check_mc_arity(alg, project_type_B(m3), 5)


def test_embed_and_allowed_m3():
    alg = padded_family_algebra(fx.k_times_k())
    assert alg.dim == 4 and alg.unit is None
    D = DoubleBracket(fx.k_times_k(), {(0, 1, 1, 0): 1, (1, 0, 0, 1): -1})
    assert embed_bracket(D, alg).entries == D.entries
    m3 = random_allowed_m3(2, random.Random(0))
    assert m3.dim == 2
