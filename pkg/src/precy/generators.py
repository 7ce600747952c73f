"""Random valid and deliberately broken double brackets, and padded m3 families.

Antisymmetry and outer Leibniz are linear in ``D``, so the brackets passing
both form a subspace ``L`` computed exactly once per algebra. Double Jacobi
is quadratic and homogeneous; valid brackets are drawn from ``L`` and
filtered by it.
"""

import random
from functools import lru_cache
from itertools import product

from precy.ainfinity import TernaryOperation, cyclic_orbit_fill, from_cyclic_tensor
from precy.algebra import AssocAlgebra
from precy.double_poisson import (
    DoubleBracket,
    check_antisymmetry,
    check_double_jacobi,
    check_leibniz_outer,
    m3_from_bracket,
)
from precy.errors import ConstructionError
from precy.linalg import nullspace_sparse


def _var(n, i, j, k, l):
    return ((i * n + j) * n + k) * n + l


def _unvar(n, v):
    v, l = divmod(v, n)
    v, k = divmod(v, n)
    i, j = divmod(v, n)
    return i, j, k, l


def linear_constraints(alg: AssocAlgebra, antisymmetry=True):
    """Rows of the linear system: antisymmetry (optional) and outer Leibniz."""
    n = alg.dim
    c = alg.structure_constants
    rows = []
    for i, j, k, l in product(range(n), repeat=4):
        if not antisymmetry:
            break
        if (i, j, k, l) < (j, i, l, k):
            rows.append({_var(n, i, j, k, l): 1, _var(n, j, i, l, k): 1})
        elif (i, j, k, l) == (j, i, l, k):
            rows.append({_var(n, i, j, k, l): 2})
    by_left = {}
    for (a, b, m), v in c.items():
        by_left.setdefault(a, []).append((b, m, v))
    for i, j, k in product(range(n), repeat=3):
        for p, q in product(range(n), repeat=2):
            row = {}

            def put(var, w):
                row[var] = row.get(var, 0) + w

            for m, w in alg.product_basis(j, k).items():
                put(_var(n, i, m, p, q), w)
            # j . {{i,k}} contributes D[i,k,r,q] c_{j r}^p
            for r, m, w in by_left.get(j, ()):
                if m == p:
                    put(_var(n, i, k, r, q), -w)
            # {{i,j}} . k contributes D[i,j,p,r] c_{r k}^q
            for r in range(n):
                w = c.get((r, k, q))
                if w:
                    put(_var(n, i, j, p, r), -w)
            row = {key: w for key, w in row.items() if w}
            if row:
                rows.append(row)
    return rows


@lru_cache(maxsize=None)
def leibniz_space(alg: AssocAlgebra, antisymmetry=True):
    """Basis of outer-Leibniz brackets (antisymmetric by default) as entry dicts."""
    n = alg.dim
    basis = nullspace_sparse(linear_constraints(alg, antisymmetry), n ** 4)
    return tuple({_unvar(n, v): w for v, w in vec.items()} for vec in basis)


def _combo(alg, basis, rng, max_terms=3, coeff_range=3):
    if not basis:
        return DoubleBracket.zero(alg)
    k = rng.randint(1, min(max_terms, len(basis)))
    entries = {}
    for vec in rng.sample(list(basis), k):
        s = rng.choice([x for x in range(-coeff_range, coeff_range + 1) if x])
        for key, w in vec.items():
            entries[key] = entries.get(key, 0) + s * w
    return DoubleBracket(alg, entries)


def random_valid_bracket(alg, rng: random.Random, attempts=200):
    """A random double Poisson bracket (possibly zero if none other is found)."""
    basis = leibniz_space(alg)
    for _ in range(attempts):
        D = _combo(alg, basis, rng)
        if check_double_jacobi(D):
            return D
    return DoubleBracket.zero(alg)


def jacobi_mutation(alg, rng: random.Random, attempts=200):
    """Antisymmetric and Leibniz, but Jacobi fails; ``None`` if none found."""
    basis = leibniz_space(alg)
    for _ in range(attempts):
        D = _combo(alg, basis, rng)
        if not check_double_jacobi(D):
            return D
    return None


def leibniz_mutation(alg, rng: random.Random, attempts=500, coeff_range=3):
    """Antisymmetric and Jacobi, but outer Leibniz fails; ``None`` if none found."""
    n = alg.dim
    for _ in range(attempts):
        entries = {}
        for _ in range(rng.randint(1, 2)):
            i, j, k, l = (rng.randrange(n) for _ in range(4))
            s = rng.choice([x for x in range(-coeff_range, coeff_range + 1) if x])
            entries[(i, j, k, l)] = entries.get((i, j, k, l), 0) + s
            entries[(j, i, l, k)] = entries.get((j, i, l, k), 0) - s
        D = DoubleBracket(alg, entries)
        if not D.entries:
            continue
        if check_antisymmetry(D) and check_double_jacobi(D) and not check_leibniz_outer(D):
            return D
    return None


def antisymmetry_mutation(D: DoubleBracket, rng: random.Random):
    """Perturb one coefficient so that antisymmetry fails."""
    n = D.alg.dim
    while True:
        key = tuple(rng.randrange(n) for _ in range(4))
        D2 = D.with_entry(key, D.coefficient(*key) + rng.choice([-2, -1, 1, 2]))
        if not check_antisymmetry(D2):
            return D2


def padded_family_algebra(base: AssocAlgebra, extra=2):
    """``base x Z`` with ``Z`` a zero-product algebra of dimension ``extra``."""
    n = base.dim
    names = list(base.basis_names) + [f"z{i}" for i in range(extra)]
    return AssocAlgebra(n + extra, base.structure_constants, names, name=f"{base.name}+zero{extra}")


def embed_bracket(D: DoubleBracket, alg: AssocAlgebra):
    if alg.dim < D.alg.dim:
        raise ConstructionError("target algebra is too small")
    return DoubleBracket(alg, D.entries)


def type_a_padding(dim, a_index, d_index, value):
    """A cyclic type-A ``m3`` supported on ``e_a`` and ``e_d^*`` only.

    Its outputs lie in ``span(e_d, e_a^*)``, which it never accepts as
    input, so it composes to zero with itself and with anything supported
    away from ``a_index`` and ``d_index``.
    """
    a, f = a_index, dim + d_index
    return from_cyclic_tensor(dim, cyclic_orbit_fill(dim, {(a, a, f, f): value}))


def padded_m3_family(count, seed, bases):
    """MC-passing ``m3 = m3_from_bracket(D) + Y`` with type-A padding ``Y``.

    ``bases`` is a list of base algebras; each instance embeds a random valid
    bracket into ``base x Z`` (``Z`` of dimension 2) and pads with a random
    multiple of a type-A operation on the ``Z`` indices.
    """
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        base = bases[idx % len(bases)]
        alg = padded_family_algebra(base)
        D = embed_bracket(random_valid_bracket(base, rng), alg)
        B = m3_from_bracket(D)
        value = rng.choice([x for x in range(-5, 6) if x])
        Y = type_a_padding(alg.dim, base.dim + 1, base.dim, value)
        out.append((alg, D, B + Y))
    return out


def random_allowed_m3(dim, rng: random.Random, density=0.1, coeff_range=2):
    """A random (not necessarily cyclic) ``m3`` on the degree-allowed tables."""
    from precy.ainfinity import ALLOWED_PATTERNS

    tables = {}
    for pattern in ALLOWED_PATTERNS:
        table = {}
        for key in product(range(dim), repeat=4):
            if rng.random() < density:
                table[key] = rng.randint(-coeff_range, coeff_range)
        tables[pattern] = table
    return TernaryOperation(dim, tables)
