"""Representation spaces Rep_n(A) and the Poisson bracket induced by a double bracket.

Coordinates are the matrix entries ``x[a][i][j]`` (0-based), written as
variable labels ``(a, i, j)``. The double bracket ``D`` induces

    {x[a][i][j], x[b][k][l]} = sum_{c,d} D[a,b,c,d] x[c][k][j] x[d][i][l]

which is extended to polynomials as a biderivation. Everything is checked
by exact evaluation at sampled points of Rep_n(A), plus symbolic identities
in the ambient polynomial ring where those hold there.
"""

import random
from dataclasses import dataclass
from itertools import product

from precy.ainfinity import TernaryOperation, project_type_B
from precy.algebra import AssocAlgebra
from precy.double_poisson import DoubleBracket, bracket_from_m3, check_polyderivation
from precy.errors import ConstructionError, InputShapeError
from precy.linalg import identity, inverse, matmul
from precy.poly import CoordPoly
from precy.report import CheckReport
from precy.scalars import ZERO, to_scalar


def _matrix(rows, n):
    m = tuple(tuple(to_scalar(v) for v in row) for row in rows)
    if len(m) != n or any(len(r) != n for r in m):
        raise InputShapeError(f"expected a {n}x{n} matrix")
    return m


@dataclass(frozen=True)
class RepPoint:
    n: int
    mats: tuple

    def __post_init__(self):
        if self.n < 1:
            raise InputShapeError("representation size must be at least 1")
        object.__setattr__(self, "mats", tuple(_matrix(m, self.n) for m in self.mats))

    def coord(self, v):
        a, i, j = v
        return self.mats[a][i][j]

    def conjugate(self, g, g_inv):
        """``Ad_g``: every matrix ``X`` becomes ``g X g^-1``."""
        return RepPoint(self.n, tuple(matmul(matmul(g, list(map(list, X))), g_inv) for X in self.mats))


def zero_rep(alg: AssocAlgebra, n):
    """Every basis element acts by zero, except that a unit acts by the identity."""
    unit = alg.unit or [0] * alg.dim
    return RepPoint(n, tuple([[unit[a] if r == s else 0 for s in range(n)] for r in range(n)]
                             for a in range(alg.dim)))


def validate_rep_point(alg: AssocAlgebra, p: RepPoint) -> CheckReport:
    if len(p.mats) != alg.dim:
        return CheckReport("rep-point", False, None, None, 0,
                           {"reason": f"expected {alg.dim} matrices, got {len(p.mats)}"})
    n = p.n
    count = 0
    for i, j in product(range(alg.dim), repeat=2):
        count += 1
        lhs = matmul(p.mats[i], p.mats[j])
        for k, c in alg.product_basis(i, j).items():
            for r, s in product(range(n), repeat=2):
                lhs[r][s] -= c * p.mats[k][r][s]
        if any(v for row in lhs for v in row):
            return CheckReport("rep-point", False, (i, j), [list(r) for r in lhs], count,
                               {"identity": "X_i X_j = sum_k c_ij^k X_k"})
    if alg.unit is not None:
        U = [[sum((c * p.mats[k][r][s] for k, c in enumerate(alg.unit)), ZERO) for s in range(n)]
             for r in range(n)]
        if U != identity(n):
            return CheckReport("rep-point", False, ("unit",), U, count + 1,
                               {"identity": "unit maps to the identity"})
        count += 1
    return CheckReport("rep-point", True, evaluated=count)


def random_unimodular(n, rng: random.Random, spread=2):
    """``L U`` with unit diagonals: integer entries and an integer inverse."""
    L = [[1 if i == j else (rng.randint(-spread, spread) if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (rng.randint(-spread, spread) if j > i else 0) for j in range(n)] for i in range(n)]
    g = matmul(L, U)
    return g, inverse(g)


def block_diagonal(alg, blocks):
    n = sum(b.n for b in blocks)
    mats = []
    for a in range(alg.dim):
        M = [[ZERO] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for r, s in product(range(b.n), repeat=2):
                M[off + r][off + s] = b.mats[a][r][s]
            off += b.n
        mats.append(M)
    return RepPoint(n, tuple(mats))


def _size_splits(sizes, n):
    """All multisets (as sorted tuples of seed indices) whose sizes sum to ``n``."""
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(sizes)):
            if sizes[idx] <= remaining:
                rec(idx, remaining - sizes[idx], acc + [idx])

    rec(0, n, [])
    return out


def sample_rep_points(alg: AssocAlgebra, n, seeds, count, rng_seed):
    """``count`` conjugates ``g B g^-1`` of random block-diagonal seed assemblies."""
    if n < 1:
        raise InputShapeError("representation size must be at least 1")
    for s in seeds:
        rep = validate_rep_point(alg, s)
        if not rep:
            raise ConstructionError(f"seed of size {s.n} is not a representation: {rep.summary()}")
    splits = _size_splits([s.n for s in seeds], n)
    if not splits:
        raise ConstructionError(f"no combination of seed sizes {[s.n for s in seeds]} adds up to {n}")
    rng = random.Random(rng_seed)
    points = []
    for _ in range(count):
        choice = list(rng.choice(splits))
        rng.shuffle(choice)
        base = block_diagonal(alg, [seeds[i] for i in choice])
        g, g_inv = random_unimodular(n, rng)
        points.append(base.conjugate(g, g_inv))
    return points


# --- the induced bracket ------------------------------------------------------

def coordinates(alg, n):
    return [(a, i, j) for a in range(alg.dim) for i in range(n) for j in range(n)]


def _check_coord(D, n, v):
    a, i, j = v
    if not (0 <= a < D.alg.dim and 0 <= i < n and 0 <= j < n):
        raise InputShapeError(f"coordinate {v} out of range for dim {D.alg.dim}, n = {n}")


def induced_coordinate_bracket(D: DoubleBracket, n, u, v) -> CoordPoly:
    _check_coord(D, n, u)
    _check_coord(D, n, v)
    a, i, j = u
    b, k, l = v
    terms = {}
    for (c, d), w in D.value(a, b).items():
        mono = tuple(sorted((((c, k, j), 1), ((d, i, l), 1))))
        if mono[0][0] == mono[1][0]:
            mono = ((mono[0][0], 2),)
        terms[mono] = terms.get(mono, ZERO) + w
    return CoordPoly(terms)


def poisson_bracket(D: DoubleBracket, n, f: CoordPoly, g: CoordPoly) -> CoordPoly:
    """Symbolic biderivation extension of the coordinate bracket."""
    out = CoordPoly()
    for v in f.variables():
        dv = f.derivative(v)
        for w in g.variables():
            out = out + dv * g.derivative(w) * induced_coordinate_bracket(D, n, v, w)
    return out


class PointBracket:
    """The bracket matrix ``B[u][v] = {u, v}(p)`` of coordinates at one point."""

    def __init__(self, D: DoubleBracket, n, p: RepPoint):
        self.D, self.n, self.p = D, n, p
        self._rows = {}

    def row(self, u):
        """Sparse ``{v: {u, v}(p)}``."""
        if u in self._rows:
            return self._rows[u]
        a, i, j = u
        X = self.p.mats
        n = self.n
        out = {}
        for b in range(self.D.alg.dim):
            val = self.D.value(a, b)
            if not val:
                continue
            for k, l in product(range(n), repeat=2):
                s = ZERO
                for (c, d), w in val.items():
                    x1 = X[c][k][j]
                    if x1:
                        x2 = X[d][i][l]
                        if x2:
                            s += w * x1 * x2
                if s:
                    out[(b, k, l)] = s
        self._rows[u] = out
        return out

    def value(self, u, v):
        return self.row(u).get(v, ZERO)

    def gradient_pairing(self, grad_f, grad_g):
        """``sum_{u,v} grad_f[u] grad_g[v] B[u][v]`` for sparse gradients."""
        total = ZERO
        for u, fu in grad_f.items():
            r = self.row(u)
            for v, gv in grad_g.items():
                b = r.get(v)
                if b:
                    total += fu * gv * b
        return total


def gradient_at(f: CoordPoly, p: RepPoint):
    out = {}
    for v in f.variables():
        val = f.derivative(v).evaluate(p.coord)
        if val:
            out[v] = val
    return out


def poisson_eval(D: DoubleBracket, n, f: CoordPoly, g: CoordPoly, p: RepPoint, cache: PointBracket = None):
    """``{f, g}(p)`` via ``sum df/du dg/dv {u, v}(p)``."""
    pb = cache if cache is not None else PointBracket(D, n, p)
    return pb.gradient_pairing(gradient_at(f, p), gradient_at(g, p))


def _bracket_gradient(D, p, u, v):
    """Gradient at ``p`` of the quadratic polynomial ``{u, v}``."""
    a, i, j = u
    b, k, l = v
    X = p.mats
    grad = {}
    for (c, d), w in D.value(a, b).items():
        y = X[d][i][l]
        if y:
            key = (c, k, j)
            grad[key] = grad.get(key, ZERO) + w * y
        y = X[c][k][j]
        if y:
            key = (d, i, l)
            grad[key] = grad.get(key, ZERO) + w * y
    return {k: v for k, v in grad.items() if v}


def check_coordinate_antisymmetry(D: DoubleBracket, n) -> CheckReport:
    """Symbolic ``{u, v} = -{v, u}`` for all coordinate pairs."""
    coords = coordinates(D.alg, n)
    count = 0
    for x, u in enumerate(coords):
        for v in coords[x:]:
            count += 1
            s = induced_coordinate_bracket(D, n, u, v) + induced_coordinate_bracket(D, n, v, u)
            if s:
                return CheckReport("coordinate-antisymmetry", False, (u, v), repr(s), count)
    return CheckReport("coordinate-antisymmetry", True, evaluated=count)


def check_coordinate_jacobi_symbolic(D: DoubleBracket, n) -> CheckReport:
    """Jacobi for coordinate triples as an identity of polynomials."""
    coords = coordinates(D.alg, n)
    count = 0
    br = {(u, v): induced_coordinate_bracket(D, n, u, v) for u in coords for v in coords}
    for u, v, w in product(coords, repeat=3):
        count += 1
        J = (poisson_bracket(D, n, CoordPoly.var(u), br[(v, w)])
             + poisson_bracket(D, n, CoordPoly.var(v), br[(w, u)])
             + poisson_bracket(D, n, CoordPoly.var(w), br[(u, v)]))
        if J:
            return CheckReport("coordinate-jacobi", False, (u, v, w), repr(J), count)
    return CheckReport("coordinate-jacobi", True, evaluated=count)


def _jacobi_at_point(D, n, p, coords):
    pb = PointBracket(D, n, p)
    grads = {}

    def grad(u, v):
        key = (u, v)
        if key not in grads:
            grads[key] = _bracket_gradient(D, p, u, v)
        return grads[key]

    count = 0
    for u, v, w in product(coords, repeat=3):
        count += 1
        val = (pb.gradient_pairing({u: 1}, grad(v, w))
               + pb.gradient_pairing({v: 1}, grad(w, u))
               + pb.gradient_pairing({w: 1}, grad(u, v)))
        if val:
            return (u, v, w), val, count
    return None, None, count


def check_jacobi_at_points(D: DoubleBracket, n, points) -> CheckReport:
    """``{f,{g,h}} + {g,{h,f}} + {h,{f,g}} = 0`` for all coordinate triples at each point."""
    coords = coordinates(D.alg, n)
    total = 0
    for idx, p in enumerate(points):
        witness, val, count = _jacobi_at_point(D, n, p, coords)
        total += count
        if witness is not None:
            return CheckReport("jacobi-at-points", False, witness, val, total, {"point": idx})
    return CheckReport("jacobi-at-points", True, evaluated=total, details={"points": len(points)})


def _conjugated_coordinate(n, g, g_inv, v):
    """Gradient of ``x_v o Ad_g``: ``(g X_a g^-1)_{ij} = sum g_ik X_a[k][l] g^-1_lj``."""
    a, i, j = v
    out = {}
    for k, l in product(range(n), repeat=2):
        w = g[i][k] * g_inv[l][j]
        if w:
            out[(a, k, l)] = w
    return out


def check_gl_equivariance(D: DoubleBracket, n, points, count_g, rng_seed) -> CheckReport:
    """``{f o Ad_g, h o Ad_g}(p) = {f, h}(Ad_g p)`` for coordinate functions ``f, h``."""
    rng = random.Random(rng_seed)
    gs = [random_unimodular(n, rng) for _ in range(count_g)]
    coords = coordinates(D.alg, n)
    total = 0
    for pidx, p in enumerate(points):
        pb = PointBracket(D, n, p)
        for gidx, (g, g_inv) in enumerate(gs):
            moved = PointBracket(D, n, p.conjugate(g, g_inv))
            lifted = {v: _conjugated_coordinate(n, g, g_inv, v) for v in coords}
            for u, v in product(coords, repeat=2):
                total += 1
                lhs = pb.gradient_pairing(lifted[u], lifted[v])
                rhs = moved.value(u, v)
                if lhs != rhs:
                    return CheckReport("gl-equivariance", False, (u, v), lhs - rhs, total,
                                       {"point": pidx, "g": gidx})
    return CheckReport("gl-equivariance", True, evaluated=total,
                       details={"points": len(points), "group_elements": count_g})


def relation_polynomials(alg: AssocAlgebra, n):
    """Entries of ``X_i X_j - sum_k c_ij^k X_k`` (and the unit relation, if any)."""
    rels = []
    for i, j in product(range(alg.dim), repeat=2):
        prod_ij = alg.product_basis(i, j)
        for r, s in product(range(n), repeat=2):
            terms = {}
            for t in range(n):
                mono = tuple(sorted((((i, r, t), 1), ((j, t, s), 1))))
                if mono[0][0] == mono[1][0]:
                    mono = ((mono[0][0], 2),)
                terms[mono] = terms.get(mono, ZERO) + 1
            for k, c in prod_ij.items():
                mono = (((k, r, s), 1),)
                terms[mono] = terms.get(mono, ZERO) - c
            rels.append(((i, j, r, s), CoordPoly(terms)))
    if alg.unit is not None:
        for r, s in product(range(n), repeat=2):
            terms = {(((k, r, s), 1),): c for k, c in enumerate(alg.unit) if c}
            if r == s:
                terms[()] = -1
            rels.append((("unit", r, s), CoordPoly(terms)))
    return rels


def check_ideal_compatibility(D: DoubleBracket, n, points) -> CheckReport:
    """``{x_u, r}(p) = 0`` for every coordinate ``u`` and relation ``r`` at each point."""
    coords = coordinates(D.alg, n)
    rels = relation_polynomials(D.alg, n)
    total = 0
    for pidx, p in enumerate(points):
        pb = PointBracket(D, n, p)
        for label, r in rels:
            gr = gradient_at(r, p)
            for u in coords:
                total += 1
                val = pb.gradient_pairing({u: 1}, gr)
                if val:
                    return CheckReport("ideal-compatibility", False, (u, label), val, total, {"point": pidx})
    return CheckReport("ideal-compatibility", True, evaluated=total, details={"points": len(points)})


def check_restricted_polyderivation(alg: AssocAlgebra, m3: TernaryOperation) -> CheckReport:
    """Polyderivation check on the bracket read off the type-B projection of ``m3``."""
    D = bracket_from_m3(project_type_B(m3), alg, verify=False)
    rep = check_polyderivation(alg, D)
    return CheckReport("restricted-polyderivation", rep.passed, rep.witness, rep.residual,
                       rep.evaluated, rep.details)
