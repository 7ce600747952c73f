"""Finite-dimensional associative algebras and the extended space A + A*.

Basis elements of the extended space are addressed in two ways: the public
:class:`ExtIndex` (sort plus index) and a flat integer used by the hot
loops, where ``0 <= x < n`` is ``e_x`` in ``A`` and ``n <= x < 2n`` is the
dual basis element ``e_{x-n}^*``.

Shifted degrees follow the grading ``A -> -1``, ``A* -> 0``; every
operation ``m_k`` has degree +1.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Mapping, Optional, Sequence

from precy.errors import InputShapeError
from precy.report import CheckReport
from precy.scalars import ZERO, Fraction, to_scalar


class Sort(str, Enum):
    ALG = "A"
    DUAL = "A*"

    @property
    def degree(self):
        return -1 if self is Sort.ALG else 0

    def dual(self):
        return Sort.DUAL if self is Sort.ALG else Sort.ALG

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class ExtIndex:
    sort: Sort
    index: int

    @property
    def degree(self):
        return self.sort.degree

    def flat(self, dim):
        if not 0 <= self.index < dim:
            raise InputShapeError(f"index {self.index} out of range for dim {dim}")
        return self.index if self.sort is Sort.ALG else dim + self.index

    @classmethod
    def from_flat(cls, dim, x):
        if x < dim:
            return cls(Sort.ALG, x)
        return cls(Sort.DUAL, x - dim)

    def __str__(self):
        return f"e{self.index}" if self.sort is Sort.ALG else f"e{self.index}*"


def flat_degree(dim, x):
    return -1 if x < dim else 0


def add_into(acc, vec, scale=1):
    """``acc += scale * vec`` for sparse dicts, dropping cancelled keys."""
    for key, val in vec.items():
        new = acc.get(key, ZERO) + scale * val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


@dataclass(frozen=True)
class ExtElement:
    """An element ``a + f`` of ``A + A*`` with dense coefficient tuples."""

    alg_part: tuple
    dual_part: tuple

    def __post_init__(self):
        if len(self.alg_part) != len(self.dual_part):
            raise InputShapeError("alg and dual parts differ in length")
        object.__setattr__(self, "alg_part", tuple(to_scalar(c) for c in self.alg_part))
        object.__setattr__(self, "dual_part", tuple(to_scalar(c) for c in self.dual_part))

    @property
    def dim(self):
        return len(self.alg_part)

    @classmethod
    def zero(cls, dim):
        return cls((ZERO,) * dim, (ZERO,) * dim)

    @classmethod
    def basis(cls, dim, idx):
        coeffs = [ZERO] * (2 * dim)
        coeffs[idx.flat(dim)] = Fraction(1)
        return cls(tuple(coeffs[:dim]), tuple(coeffs[dim:]))

    @classmethod
    def from_alg(cls, vec):
        return cls(tuple(vec), (ZERO,) * len(vec))

    @classmethod
    def from_dual(cls, vec):
        return cls((ZERO,) * len(vec), tuple(vec))

    @classmethod
    def from_sparse(cls, dim, vec):
        coeffs = [ZERO] * (2 * dim)
        for x, c in vec.items():
            coeffs[x] += c
        return cls(tuple(coeffs[:dim]), tuple(coeffs[dim:]))

    def to_sparse(self):
        dim = self.dim
        out = {}
        for i, c in enumerate(self.alg_part):
            if c:
                out[i] = c
        for i, c in enumerate(self.dual_part):
            if c:
                out[dim + i] = c
        return out

    def is_zero(self):
        return not any(self.alg_part) and not any(self.dual_part)

    def _check(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        if other.dim != self.dim:
            raise InputShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ExtElement(
            tuple(a + b for a, b in zip(self.alg_part, other.alg_part)),
            tuple(a + b for a, b in zip(self.dual_part, other.dual_part)),
        )

    def __neg__(self):
        return ExtElement(tuple(-a for a in self.alg_part), tuple(-a for a in self.dual_part))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = to_scalar(scalar)
        return ExtElement(tuple(s * a for a in self.alg_part), tuple(s * a for a in self.dual_part))

    __rmul__ = __mul__


class AssocAlgebra:
    """A finite-dimensional algebra given by structure constants.

    ``structure_constants[(i, j, k)] = c`` means ``e_i e_j`` has
    coefficient ``c`` on ``e_k``. Instances are treated as immutable.
    """

    def __init__(
        self,
        dim: int,
        structure_constants: Mapping,
        basis_names: Optional[Sequence[str]] = None,
        unit: Optional[Sequence] = None,
        name: str = "",
    ):
        if not isinstance(dim, int) or dim <= 0:
            raise InputShapeError(f"dim must be a positive integer, got {dim!r}")
        if basis_names is None:
            basis_names = [f"e{i}" for i in range(dim)]
        basis_names = tuple(basis_names)
        if len(basis_names) != dim:
            raise InputShapeError(f"expected {dim} basis names, got {len(basis_names)}")
        if len(set(basis_names)) != dim:
            raise InputShapeError("basis names must be distinct")
        constants = {}
        for key, val in structure_constants.items():
            if len(key) != 3 or not all(isinstance(i, int) and 0 <= i < dim for i in key):
                raise InputShapeError(f"bad structure-constant index {key!r} for dim {dim}")
            c = to_scalar(val)
            if c:
                constants[tuple(key)] = constants.get(tuple(key), ZERO) + c
        if unit is not None:
            unit = tuple(to_scalar(u) for u in unit)
            if len(unit) != dim:
                raise InputShapeError(f"unit has length {len(unit)}, expected {dim}")
        self._dim = dim
        self._names = basis_names
        self._constants = {k: v for k, v in constants.items() if v}
        self._unit = unit
        self._name = name
        table = {}
        for (i, j, k), c in sorted(self._constants.items()):
            table.setdefault((i, j), {})[k] = c
        self._table = table

    @property
    def dim(self):
        return self._dim

    @property
    def basis_names(self):
        return self._names

    @property
    def structure_constants(self):
        return dict(self._constants)

    @property
    def unit(self):
        return self._unit

    @property
    def name(self):
        return self._name

    def __repr__(self):
        label = self._name or "AssocAlgebra"
        return f"<{label} dim={self._dim}>"

    def __eq__(self, other):
        if not isinstance(other, AssocAlgebra):
            return NotImplemented
        return (
            self._dim == other._dim
            and self._constants == other._constants
            and self._unit == other._unit
            and self._names == other._names
        )

    def __hash__(self):
        return hash((self._dim, tuple(sorted(self._constants.items())), self._unit, self._names))

    def product_basis(self, i, j):
        """``e_i e_j`` as a sparse dict (do not mutate)."""
        return self._table.get((i, j), {})

    def basis_vector(self, i):
        v = [ZERO] * self._dim
        v[i] = Fraction(1)
        return tuple(v)

    def index_of(self, name):
        try:
            return self._names.index(name)
        except ValueError:
            raise InputShapeError(f"unknown basis element {name!r}") from None

    @cached_property
    def unit_index(self):
        """Index of the unit when it is itself a basis element, else None."""
        if self._unit is None:
            return None
        nonzero = [i for i, u in enumerate(self._unit) if u]
        if len(nonzero) == 1 and self._unit[nonzero[0]] == 1:
            return nonzero[0]
        return None

    @cached_property
    def _m2_table(self):
        n = self._dim
        table = {}
        for (i, j), vec in self._table.items():
            table[(i, j)] = dict(vec)
        # (a.f)(c) = f(c a) and (f.a)(c) = -f(a c); pinned by cyclicity of m2
        for (c, a), vec in self._table.items():
            for j, coef in vec.items():
                add_into(table.setdefault((a, n + j), {}), {n + c: coef})
        for (a, c), vec in self._table.items():
            for j, coef in vec.items():
                add_into(table.setdefault((n + j, a), {}), {n + c: -coef})
        return {k: v for k, v in table.items() if v}

    def m2_flat(self, x, y):
        """Trivial-extension product of flat extended basis elements."""
        return self._m2_table.get((x, y), {})


def _vector(alg, v, label):
    if len(v) != alg.dim:
        raise InputShapeError(f"{label} has length {len(v)}, expected {alg.dim}")
    return [to_scalar(c) for c in v]


def multiply(alg: AssocAlgebra, u, v):
    """Bilinear extension of the structure constants."""
    u = _vector(alg, u, "u")
    v = _vector(alg, v, "v")
    out = [ZERO] * alg.dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            for k, c in alg.product_basis(i, j).items():
                out[k] += ui * vj * c
    return tuple(out)


def _sparse_product(alg, u, v):
    out = {}
    for i, ui in u.items():
        for j, vj in v.items():
            add_into(out, alg.product_basis(i, j), ui * vj)
    return out


def check_associativity(alg: AssocAlgebra) -> CheckReport:
    n = alg.dim
    count = 0
    for i, j, k in product(range(n), repeat=3):
        count += 1
        left = _sparse_product(alg, alg.product_basis(i, j), {k: Fraction(1)})
        right = _sparse_product(alg, {i: Fraction(1)}, alg.product_basis(j, k))
        diff = add_into(dict(left), right, -1)
        if diff:
            return CheckReport("associativity", False, (i, j, k), diff, count)
    return CheckReport("associativity", True, evaluated=count)


def check_unit(alg: AssocAlgebra) -> CheckReport:
    if alg.unit is None:
        return CheckReport("unit", True, details={"unit": None})
    u = alg.unit
    n = alg.dim
    for i in range(n):
        e = alg.basis_vector(i)
        for side, val in (("left", multiply(alg, u, e)), ("right", multiply(alg, e, u))):
            if val != e:
                diff = {k: val[k] - e[k] for k in range(n) if val[k] != e[k]}
                return CheckReport("unit", False, (i,), diff, i + 1, {"side": side})
    return CheckReport("unit", True, evaluated=n)


def pairing(x: ExtElement, y: ExtElement):
    """The natural pairing: ``<f, a> = f(a)`` and ``<a, f> = -f(a)``.

    ``A`` and ``A*`` are each isotropic. The sign makes the form satisfy
    ``<x, y> = -(-1)^{|x|'|y|'} <y, x>``.
    """
    if x.dim != y.dim:
        raise InputShapeError(f"dimension mismatch: {x.dim} vs {y.dim}")
    total = ZERO
    for f, a in zip(x.dual_part, y.alg_part):
        total += f * a
    for a, f in zip(x.alg_part, y.dual_part):
        total -= f * a
    return total


def pairing_flat(dim, x, y):
    if x >= dim and y < dim:
        return 1 if x - dim == y else 0
    if x < dim and y >= dim:
        return -1 if y - dim == x else 0
    return 0


def pair_sparse(dim, u, v):
    total = ZERO
    for x, cu in u.items():
        for y, cv in v.items():
            s = pairing_flat(dim, x, y)
            if s:
                total += s * cu * cv
    return total


def gram_matrix(dim):
    return [[Fraction(pairing_flat(dim, x, y)) for y in range(2 * dim)] for x in range(2 * dim)]


def trivial_extension_product(alg: AssocAlgebra, x: ExtElement, y: ExtElement) -> ExtElement:
    if x.dim != alg.dim or y.dim != alg.dim:
        raise InputShapeError("element dimension does not match the algebra")
    out = {}
    for p, cp in x.to_sparse().items():
        for q, cq in y.to_sparse().items():
            add_into(out, alg.m2_flat(p, q), cp * cq)
    return ExtElement.from_sparse(alg.dim, out)


def cyclic_sign(degrees):
    """Sign relating ``<m(x1..xk), x_{k+1}>`` to ``<m(x2..x_{k+1}), x1>``."""
    first = degrees[0]
    rest = sum(degrees[1:])
    return -1 if (first * rest) % 2 else 1


def check_m2_cyclicity(alg: AssocAlgebra, m2=None) -> CheckReport:
    """Exhaustive cyclicity of the binary product against the pairing.

    ``m2`` defaults to the trivial-extension product; passing another
    flat-index callable lets callers test alternative actions.
    """
    n = alg.dim
    m2 = m2 or alg.m2_flat
    count = 0
    for x1, x2, x3 in product(range(2 * n), repeat=3):
        count += 1
        degs = [flat_degree(n, x) for x in (x1, x2, x3)]
        lhs = pair_sparse(n, m2(x1, x2), {x3: 1})
        rhs = cyclic_sign(degs) * pair_sparse(n, m2(x2, x3), {x1: 1})
        if lhs != rhs:
            witness = tuple(str(ExtIndex.from_flat(n, x)) for x in (x1, x2, x3))
            return CheckReport("m2-cyclicity", False, witness, lhs - rhs, count)
    return CheckReport("m2-cyclicity", True, evaluated=count)


def mc3_residual_flat(alg, x1, x2, x3, m2=None):
    """Arity-3 Maurer-Cartan residual of the product alone (signed associativity)."""
    n = alg.dim
    m2 = m2 or alg.m2_flat
    out = {}
    for y, c in m2(x1, x2).items():
        add_into(out, m2(y, x3), c)
    sign = -1 if flat_degree(n, x1) % 2 else 1
    for y, c in m2(x2, x3).items():
        add_into(out, m2(x1, y), sign * c)
    return out


def check_trivial_extension_associativity(alg: AssocAlgebra, m2=None) -> CheckReport:
    n = alg.dim
    count = 0
    for x1, x2, x3 in product(range(2 * n), repeat=3):
        count += 1
        res = mc3_residual_flat(alg, x1, x2, x3, m2)
        if res:
            witness = tuple(str(ExtIndex.from_flat(n, x)) for x in (x1, x2, x3))
            return CheckReport(
                "trivial-extension-associativity",
                False,
                witness,
                {str(ExtIndex.from_flat(n, k)): v for k, v in res.items()},
                count,
            )
    return CheckReport("trivial-extension-associativity", True, evaluated=count)
