import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from precy import fixtures as fx
from precy.ainfinity import (
    ADA,
    DAD,
    TYPE_B_PATTERNS,
    SortPattern,
    TernaryOperation,
    check_cyclic_invariance,
    check_maurer_cartan,
)
from precy.algebra import ExtElement, pairing
from precy.double_poisson import (
    DoubleBracket,
    Tensor,
    bracket_eval,
    bracket_from_m3,
    check_antisymmetry,
    check_axioms,
    check_double_jacobi,
    check_lemma_L,
    check_lemma_L_star,
    check_lemma_nested,
    check_lemma_R,
    check_lemma_R_star,
    check_leibniz_inner,
    check_leibniz_outer,
    check_polyderivation,
    jacobiator,
    koszul_tensor_sign,
    left_extended_bracket,
    m3_from_bracket,
    tensor_pairing,
    tau_123,
    tau_132,
    verify_correspondence,
)
from precy.errors import DomainError, InputShapeError
from precy.generators import (
    antisymmetry_mutation,
    jacobi_mutation,
    leibniz_mutation,
    leibniz_space,
    random_valid_bracket,
)

X, ONE_ = [0, 1], [1, 0]


def random_sparse(alg, rng, k=4):
    n = alg.dim
    return DoubleBracket(alg, {tuple(rng.randrange(n) for _ in range(4)): rng.randint(-3, 3) for _ in range(k)})


def test_tensor_basics():
    t = Tensor(2, {(0, 1): 2, (1, 0): -1})
    assert t.op() == Tensor(2, {(1, 0): 2, (0, 1): -1})
    assert (t - t).coeffs == {}
    assert Tensor.pure(2, 0, 1) == Tensor(3, {(2, 0, 1): 1})
    # tau_(123)(x1 x2 x3) = x3 x1 x2 and tau_(132)(x1 x2 x3) = x2 x3 x1
    assert tau_123(Tensor.pure(0, 1, 2)) == Tensor.pure(2, 0, 1)
    assert tau_132(Tensor.pure(0, 1, 2)) == Tensor.pure(1, 2, 0)
    with pytest.raises(InputShapeError):
        Tensor(2, {(0, 1, 2): 1})


def test_bracket_eval_examples(dual, dual_bracket):
    assert not bracket_eval(DoubleBracket.zero(dual), X, X)
    assert bracket_eval(dual_bracket, X, X) == Tensor(2, {(1, 0): 1, (0, 1): -1})
    assert not bracket_eval(dual_bracket, ONE_, X)
    with pytest.raises(InputShapeError):
        bracket_eval(dual_bracket, [1], X)


@pytest.mark.parametrize("alg", [a for a in fx.extra_algebras() if a.unit is not None], ids=lambda a: a.name)
def test_unit_is_central_for_leibniz_brackets(alg):
    unit = [int(c) for c in alg.unit]
    basis = leibniz_space(alg, antisymmetry=False)
    assert basis
    for vec in basis:
        D = DoubleBracket(alg, vec)
        assert check_leibniz_outer(D)
        for i in range(alg.dim):
            assert not bracket_eval(D, alg.basis_vector(i), unit)


def test_antisymmetry_examples(dual, dual_bracket):
    assert check_antisymmetry(DoubleBracket.zero(dual))
    assert check_antisymmetry(dual_bracket)
    bad = DoubleBracket(dual, {(1, 1, 1, 0): 1, (1, 1, 0, 1): 1})
    assert not check_antisymmetry(bad)


def test_leibniz_examples(dual, dual_bracket):
    assert check_leibniz_outer(DoubleBracket.zero(dual))
    assert check_leibniz_outer(dual_bracket)
    bad = DoubleBracket(dual, {(1, 1, 0, 0): 1})
    rep = check_leibniz_outer(bad)
    assert not rep.passed and rep.witness == (1, 1, 1)
    assert rep.residual == {(1, 0): -1, (0, 1): -1}


def test_inner_leibniz_follows_from_antisymmetry_and_outer():
    rng = random.Random(2)
    for alg in fx.extra_algebras():
        basis = leibniz_space(alg)
        for _ in range(5):
            D = DoubleBracket(alg, {})
            for vec in rng.sample(list(basis), min(2, len(basis))):
                D = D + DoubleBracket(alg, vec).scaled(rng.randint(-2, 2))
            assert check_leibniz_inner(D)


def test_inner_leibniz_can_fail_without_antisymmetry():
    found = None
    for alg in (fx.dual_numbers(), fx.k_times_k()):
        for vec in leibniz_space(alg, antisymmetry=False):
            D = DoubleBracket(alg, vec)
            if not check_antisymmetry(D) and not check_leibniz_inner(D):
                found = (D, check_leibniz_inner(D))
                break
        if found:
            break
    assert found is not None
    D, rep = found
    assert check_leibniz_outer(D) and rep.witness is not None


def brute_jacobiator(D, a, b, c):
    """Independent index-sum expansion of the three nested terms."""
    n = D.alg.dim
    d = D.coefficient

    def nested(x, y, z, p, q, v):
        return sum(d(y, z, u, v) * d(x, u, p, q) for u in range(n))

    out = {}
    for i, j, k in product(range(n), repeat=3):
        val = nested(a, b, c, i, j, k) + nested(b, c, a, j, k, i) + nested(c, a, b, k, i, j)
        if val:
            out[(i, j, k)] = val
    return out


def test_left_extension_examples(dual, dual_bracket):
    assert left_extended_bracket(dual_bracket, X, Tensor(1, {(1,): 1})).coeffs == bracket_eval(dual_bracket, X, X).coeffs
    assert not left_extended_bracket(DoubleBracket.zero(dual), X, Tensor.pure(1, 0))
    got = left_extended_bracket(dual_bracket, X, Tensor.pure(1, 0))
    assert got == Tensor(3, {(1, 0, 0): 1, (0, 1, 0): -1})


def test_jacobiator_examples(dual, dual_bracket):
    assert not jacobiator(DoubleBracket.zero(dual), X, X, X)
    assert not jacobiator(dual_bracket, X, X, X)
    sym = DoubleBracket(dual, {(1, 1, 1, 1): 1})
    assert jacobiator(sym, X, X, X).coeffs == brute_jacobiator(sym, 1, 1, 1)


@given(st.integers(0, 10 ** 6))
def test_jacobiator_matches_brute_force(seed):
    rng = random.Random(seed)
    alg = [fx.dual_numbers(), fx.k_cubed()][seed % 2]
    D = random_sparse(alg, rng, k=6)
    for a, b, c in product(range(alg.dim), repeat=3):
        assert jacobiator(D, alg.basis_vector(a), alg.basis_vector(b), alg.basis_vector(c)).coeffs == \
            brute_jacobiator(D, a, b, c)


def test_double_jacobi_examples(dual, dual_bracket):
    assert check_double_jacobi(DoubleBracket.zero(dual))
    assert check_double_jacobi(dual_bracket)
    doubled = dual_bracket.with_entry((1, 1, 1, 0), 2)
    rep = check_double_jacobi(doubled)
    assert not rep.passed and rep.witness == (1, 1, 1)


def test_polyderivation_examples(dual, dual_bracket):
    assert check_polyderivation(dual, DoubleBracket.zero(dual))
    assert check_polyderivation(dual, dual_bracket)
    rep = check_polyderivation(dual, lambda i, j: {(i, j): 1})
    assert not rep.passed
    # the first failing triple in row-major order is (1, 1, 1): 1 (x) 1 != 2 (1 (x) 1)
    assert rep.witness == (0, 0, 0)
    assert rep.residual == {(0, 0): -1}


def test_polyderivation_on_random_leibniz_brackets():
    rng = random.Random(4)
    for alg in fx.extra_algebras():
        for _ in range(3):
            D = random_valid_bracket(alg, rng)
            assert check_leibniz_outer(D) and check_leibniz_inner(D)
            assert check_polyderivation(alg, D)


def test_koszul_tensor_sign():
    assert [koszul_tensor_sign(k) for k in range(1, 6)] == [1, -1, -1, 1, 1]
    assert tensor_pairing([[1, 0], [0, 1]], Tensor.pure(0, 1)) == -1
    with pytest.raises(InputShapeError):
        tensor_pairing([[1, 0]], Tensor.pure(0, 1))


def defining_identity_holds(D, m3):
    alg = D.alg
    n = alg.dim
    for a, f, b, g in product(range(n), repeat=4):
        lhs = tensor_pairing([alg.basis_vector(g), alg.basis_vector(f)], bracket_eval(D, alg.basis_vector(b), alg.basis_vector(a)))
        out = m3.apply(ExtElement.from_alg(alg.basis_vector(a)), ExtElement.from_dual(alg.basis_vector(f)),
                       ExtElement.from_alg(alg.basis_vector(b)))
        if lhs != pairing(out, ExtElement.from_dual(alg.basis_vector(g))):
            return False
    return True


def test_m3_from_bracket_examples(dual, dual_bracket):
    assert m3_from_bracket(DoubleBracket.zero(dual)).is_zero()
    m3 = m3_from_bracket(dual_bracket)
    assert m3.is_type_b_only()
    assert defining_identity_holds(dual_bracket, m3)
    # m3(e_a, e_f^*, e_b) = sum_g D[b, a, g, f] e_g
    assert m3.table(ADA) == {(1, 0, 1, 1): 1, (1, 1, 1, 0): -1}


@pytest.mark.parametrize("dim", [2, 3])
def test_round_trips_random_sparse(dim):
    rng = random.Random(dim)
    alg = fx.dual_numbers() if dim == 2 else fx.truncated_polynomials(3)
    for _ in range(100):
        D = random_sparse(alg, rng, k=rng.randint(0, 6))
        m3 = m3_from_bracket(D)
        assert defining_identity_holds(D, m3)
        assert bracket_from_m3(m3, alg) == D
        assert m3_from_bracket(bracket_from_m3(m3, alg)) == m3


def test_bracket_from_m3_examples(dual, dual_bracket):
    assert bracket_from_m3(TernaryOperation.zero(2), dual) == DoubleBracket.zero(dual)
    assert bracket_from_m3(m3_from_bracket(dual_bracket), dual) == dual_bracket
    bad = TernaryOperation(2, {SortPattern.parse("A,A,A*->A"): {(0, 1, 1, 0): 1}})
    with pytest.raises(DomainError) as info:
        bracket_from_m3(bad, dual)
    assert str(info.value.pattern) == "A,A,A*->A"
    assert "A,A,A*->A" in str(info.value)


LEMMAS = [check_lemma_R, check_lemma_L, check_lemma_R_star, check_lemma_L_star, check_lemma_nested]


@pytest.mark.parametrize("check", LEMMAS, ids=lambda c: c.__name__)
def test_lemmas_on_fixtures_and_random_brackets(check, bundled):
    for alg, brackets, _ in bundled.values():
        for D in brackets:
            assert check(D)
    rng = random.Random(6)
    for alg in fx.extra_algebras():
        assert check(random_valid_bracket(alg, rng))


@pytest.mark.parametrize("check", LEMMAS, ids=lambda c: c.__name__)
def test_lemmas_hold_for_arbitrary_tensors(check):
    """These identities only unwind definitions, so they need no axioms."""
    rng = random.Random(7)
    for alg in (fx.dual_numbers(), fx.upper_triangular_2()):
        for _ in range(3):
            assert check(random_sparse(alg, rng, k=5))


def test_lemma_nested_detects_wrong_m3(dual_bracket):
    # the nested term is quadratic in m3, so a sign flip is invisible but doubling is not
    wrong = m3_from_bracket(dual_bracket).scaled(2)
    assert not check_lemma_nested(dual_bracket, wrong)


def test_correspondence_examples(dual, dual_bracket):
    for D in (DoubleBracket.zero(dual), dual_bracket):
        rep = verify_correspondence(dual, D)
        assert rep.axioms_pass and rep.mc_pass and rep.outcome() == "both sides pass"


MC4_ROWS = {("A", "A", "A*", "A"), ("A", "A*", "A", "A"), ("A*", "A", "A", "A*"),
            ("A", "A*", "A", "A*"), ("A*", "A", "A*", "A")}
MC5_ROWS = {("A", "A*", "A", "A*", "A"), ("A*", "A", "A*", "A", "A*")}


def test_failure_granularity():
    rng = random.Random(8)
    checked = {"jacobi": 0, "leibniz": 0}
    for alg in fx.extra_algebras():
        for _ in range(3):
            J = jacobi_mutation(alg, rng)
            if J is not None:
                rep = verify_correspondence(alg, J)
                assert rep.consistent and rep.failing_arities == [5]
                assert set(rep.mc_reports[5].failing_patterns()) <= MC5_ROWS
                checked["jacobi"] += 1
            L = leibniz_mutation(alg, rng)
            if L is not None:
                rep = verify_correspondence(alg, L)
                assert rep.consistent and rep.failing_arities == [4]
                assert set(rep.mc_reports[4].failing_patterns()) <= MC4_ROWS
                checked["leibniz"] += 1
    assert checked["jacobi"] >= 10 and checked["leibniz"] >= 10


def test_antisymmetry_matches_type_b_cyclicity():
    rng = random.Random(9)
    for alg in (fx.dual_numbers(), fx.k_cubed(), fx.upper_triangular_2()):
        for _ in range(10):
            D = random_valid_bracket(alg, rng)
            if rng.random() < 0.5:
                D = antisymmetry_mutation(D, rng)
            cyc = check_cyclic_invariance(alg, m3_from_bracket(D), patterns=TYPE_B_PATTERNS)
            assert cyc.passed == check_antisymmetry(D).passed


def test_axiom_list_order(dual_bracket):
    assert [r.name for r in check_axioms(dual_bracket)] == \
        ["antisymmetry", "leibniz-outer", "leibniz-inner", "double-jacobi"]


def test_report_serialization(dual, dual_bracket):
    rep = verify_correspondence(dual, dual_bracket.with_entry((1, 1, 0, 1), 5))
    d = rep.to_dict()
    assert d["consistent"] and not d["axioms_pass"] and not d["mc_pass"]
    assert d["outcome"] == "both sides fail consistently"


def test_maurer_cartan_of_valid_brackets():
    rng = random.Random(10)
    for alg in fx.extra_algebras():
        D = random_valid_bracket(alg, rng)
        assert all(r.passed for r in check_maurer_cartan(alg, m3_from_bracket(D)).values())
        assert DAD in m3_from_bracket(D).patterns() or not D.entries
