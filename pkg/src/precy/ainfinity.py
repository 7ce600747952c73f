"""Ternary operations on A + A*, cyclic invariance and Maurer-Cartan residuals.

Only ``m2`` (the trivial-extension product) and ``m3`` exist in the data
model, so the Maurer-Cartan identity has components in arities 3, 4 and 5
only; from arity 6 on every term would need an ``m_k`` with ``k >= 4``.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Mapping, Optional

from precy.algebra import (
    AssocAlgebra,
    ExtElement,
    ExtIndex,
    Sort,
    add_into,
    cyclic_sign,
    flat_degree,
    mc3_residual_flat,
)
from precy.errors import DegreeError, InputShapeError
from precy.report import CheckReport, format_residual
from precy.scalars import ZERO, to_scalar


@dataclass(frozen=True)
class SortPattern:
    inputs: tuple
    output: Optional[Sort] = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(Sort(s) for s in self.inputs))
        if self.output is not None:
            object.__setattr__(self, "output", Sort(self.output))

    @property
    def arity(self):
        return len(self.inputs)

    @classmethod
    def parse(cls, text):
        """Parse ``"A,A*,A->A"``."""
        left, _, right = text.partition("->")
        inputs = tuple(Sort(s.strip()) for s in left.split(",") if s.strip())
        output = Sort(right.strip()) if right.strip() else None
        return cls(inputs, output)

    def __str__(self):
        s = ",".join(x.value for x in self.inputs)
        return f"{s}->{self.output.value}" if self.output is not None else s


class ComponentType(str, Enum):
    TYPE_A = "TypeA"
    TYPE_B = "TypeB"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"

    @property
    def is_main(self):
        return self in (ComponentType.TYPE_A, ComponentType.TYPE_B)


def component_tensor(pattern: SortPattern):
    """The cyclic tensor of an operation: dualized inputs followed by the output."""
    if pattern.output is None:
        raise InputShapeError("pattern needs an output sort")
    return tuple(s.dual() for s in pattern.inputs) + (pattern.output,)


def classify_component(pattern: SortPattern) -> ComponentType:
    if pattern.arity != 3 or pattern.output is None:
        raise InputShapeError(f"expected a 3-input pattern with output, got {pattern}")
    tensor = component_tensor(pattern)
    n_alg = sum(1 for s in tensor if s is Sort.ALG)
    if n_alg == 4:
        return ComponentType.C1
    if n_alg == 0:
        return ComponentType.C2
    if n_alg == 3:
        return ComponentType.C3
    if n_alg == 1:
        return ComponentType.C4
    alternating = all(tensor[i] != tensor[(i + 1) % 4] for i in range(4))
    return ComponentType.TYPE_B if alternating else ComponentType.TYPE_A


def degree_allowed(pattern: SortPattern) -> bool:
    return sum(s.degree for s in pattern.inputs) + 1 == pattern.output.degree


ALL_PATTERNS = tuple(
    SortPattern(ins, out) for ins in product(Sort, repeat=3) for out in Sort
)
ALLOWED_PATTERNS = tuple(p for p in ALL_PATTERNS if degree_allowed(p))
TYPE_B_PATTERNS = (
    SortPattern((Sort.ALG, Sort.DUAL, Sort.ALG), Sort.ALG),
    SortPattern((Sort.DUAL, Sort.ALG, Sort.DUAL), Sort.DUAL),
)
ADA = TYPE_B_PATTERNS[0]
DAD = TYPE_B_PATTERNS[1]


def _as_pattern(p):
    return p if isinstance(p, SortPattern) else SortPattern.parse(p)


class TernaryOperation:
    """The ``m3`` component on ``A + A*`` as sparse per-pattern tables.

    ``tables[pattern][(i1, i2, i3, k)] = c`` means ``m3`` of the three
    basis elements (sorts from ``pattern.inputs``) has coefficient ``c`` on
    output basis element ``k`` of sort ``pattern.output``.
    """

    def __init__(self, dim: int, tables: Optional[Mapping] = None):
        if not isinstance(dim, int) or dim <= 0:
            raise InputShapeError(f"dim must be positive, got {dim!r}")
        self._dim = dim
        clean = {}
        for raw_pattern, table in (tables or {}).items():
            pattern = _as_pattern(raw_pattern)
            if pattern.arity != 3 or pattern.output is None:
                raise InputShapeError(f"bad component pattern {pattern}")
            entries = {}
            for key, val in table.items():
                key = tuple(key)
                if len(key) != 4 or not all(isinstance(i, int) and 0 <= i < dim for i in key):
                    raise InputShapeError(f"bad entry index {key!r} in {pattern}")
                c = to_scalar(val)
                if c:
                    entries[key] = entries.get(key, ZERO) + c
            entries = {k: v for k, v in entries.items() if v}
            if not entries:
                continue
            if not degree_allowed(pattern):
                raise DegreeError(
                    f"component {pattern} violates the degree +1 constraint", )
            merged = clean.setdefault(pattern, {})
            add_into(merged, entries)
            if not merged:
                del clean[pattern]
        self._tables = clean
        flat = {}
        for pattern, table in clean.items():
            offs = [0 if s is Sort.ALG else dim for s in pattern.inputs]
            out_off = 0 if pattern.output is Sort.ALG else dim
            for (i1, i2, i3, k), c in table.items():
                key = (i1 + offs[0], i2 + offs[1], i3 + offs[2])
                flat.setdefault(key, {})[k + out_off] = c
        self._flat = flat

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    @property
    def dim(self):
        return self._dim

    @property
    def tables(self):
        return {p: dict(t) for p, t in self._tables.items()}

    def table(self, pattern):
        return dict(self._tables.get(_as_pattern(pattern), {}))

    def patterns(self):
        return sorted(self._tables, key=str)

    def component_types(self):
        return {classify_component(p) for p in self._tables}

    def is_type_b_only(self):
        return all(p in TYPE_B_PATTERNS for p in self._tables)

    def is_zero(self):
        return not self._tables

    def apply_flat(self, x1, x2, x3):
        """``m3`` on flat basis indices as a sparse dict (do not mutate)."""
        return self._flat.get((x1, x2, x3), {})

    def apply(self, x: ExtElement, y: ExtElement, z: ExtElement) -> ExtElement:
        for e in (x, y, z):
            if e.dim != self._dim:
                raise InputShapeError("element dimension does not match the operation")
        out = {}
        xs, ys, zs = x.to_sparse(), y.to_sparse(), z.to_sparse()
        for a, ca in xs.items():
            for b, cb in ys.items():
                for c, cc in zs.items():
                    add_into(out, self.apply_flat(a, b, c), ca * cb * cc)
        return ExtElement.from_sparse(self._dim, out)

    def restricted(self, patterns):
        keep = set(patterns)
        return TernaryOperation(self._dim, {p: t for p, t in self._tables.items() if p in keep})

    def __add__(self, other):
        if not isinstance(other, TernaryOperation):
            return NotImplemented
        if other.dim != self.dim:
            raise InputShapeError("dimension mismatch")
        merged = self.tables
        for p, t in other._tables.items():
            add_into(merged.setdefault(p, {}), t)
        return TernaryOperation(self._dim, merged)

    def scaled(self, s):
        s = to_scalar(s)
        return TernaryOperation(self._dim, {p: {k: s * v for k, v in t.items()} for p, t in self._tables.items()})

    def __eq__(self, other):
        if not isinstance(other, TernaryOperation):
            return NotImplemented
        return self._dim == other._dim and self._tables == other._tables

    def __repr__(self):
        parts = ", ".join(f"{p}: {len(t)}" for p, t in sorted(self._tables.items(), key=lambda kv: str(kv[0])))
        return f"TernaryOperation(dim={self._dim}, {{{parts}}})"


def pair_with_basis(dim, vec, x):
    """``<vec, b_x>`` for a sparse extended vector and flat basis index ``x``."""
    if x < dim:
        return vec.get(dim + x, ZERO)
    return -vec.get(x - dim, ZERO)


def tensor_value(m3: TernaryOperation, x1, x2, x3, x4):
    """The cyclic tensor ``<m3(x1, x2, x3), x4>`` on flat indices."""
    return pair_with_basis(m3.dim, m3.apply_flat(x1, x2, x3), x4)


def _store_tensor(tables, dim, xs, value):
    """Record ``<m3(x1,x2,x3), x4> = value`` in pattern tables."""
    x1, x2, x3, x4 = xs
    pattern = SortPattern(
        tuple(Sort.ALG if x < dim else Sort.DUAL for x in (x1, x2, x3)),
        Sort.DUAL if x4 < dim else Sort.ALG,
    )
    idx = tuple(x if x < dim else x - dim for x in (x1, x2, x3))
    if x4 < dim:
        key, coef = idx + (x4,), value
    else:
        key, coef = idx + (x4 - dim,), -value
    tables.setdefault(pattern, {})[key] = coef


def from_cyclic_tensor(dim, values):
    """Build ``m3`` from values of ``<m3(x1,x2,x3), x4>`` keyed by flat 4-tuples."""
    tables = {}
    for xs, v in values.items():
        if v:
            _store_tensor(tables, dim, xs, v)
    return TernaryOperation(dim, tables)


def cyclic_orbit_fill(dim, seeds):
    """Extend seed tensor values to whole rotation orbits.

    Orbits whose rotation signs are inconsistent (a short period with odd
    total sign) are forced to zero.
    """
    values = {}
    for xs, v in seeds.items():
        orbit = {}
        cur, val = tuple(xs), to_scalar(v)
        consistent = True
        for _ in range(4):
            if cur in orbit:
                if orbit[cur] != val:
                    consistent = False
                break
            orbit[cur] = val
            degs = [flat_degree(dim, x) for x in cur]
            # <m(x1..x3), x4> = s <m(x2..x4), x1>
            val = cyclic_sign(degs) * val
            cur = cur[1:] + cur[:1]
        for t, w in orbit.items():
            values[t] = w if consistent else ZERO
    return values


def check_cyclic_invariance(alg: AssocAlgebra, m3: TernaryOperation, patterns=None) -> CheckReport:
    """Exhaustive check of ``<m3(a1,a2,a3), a4> = s <m3(a2,a3,a4), a1>``.

    ``patterns`` optionally restricts the check to 4-tuples whose leading
    three sorts and paired output belong to the given component patterns.
    """
    n = alg.dim
    if m3.dim != n:
        raise InputShapeError("operation and algebra dimensions differ")
    keep = None
    if patterns is not None:
        keep = {tuple(s is Sort.DUAL for s in p.inputs) + (p.output is Sort.ALG,) for p in patterns}
    count = 0
    for xs in product(range(2 * n), repeat=4):
        if keep is not None and tuple(x >= n for x in xs) not in keep:
            continue
        count += 1
        degs = [flat_degree(n, x) for x in xs]
        lhs = tensor_value(m3, *xs)
        rhs = cyclic_sign(degs) * tensor_value(m3, xs[1], xs[2], xs[3], xs[0])
        if lhs != rhs:
            witness = tuple(str(ExtIndex.from_flat(n, x)) for x in xs)
            return CheckReport("m3-cyclicity", False, witness, lhs - rhs, count)
    return CheckReport("m3-cyclicity", True, evaluated=count)


def complete_cyclic_closure(alg: AssocAlgebra, mu: TernaryOperation) -> TernaryOperation:
    """Fill the (A*,A,A*->A*) table from the (A,A*,A->A) table by one rotation.

    The result is cyclic exactly when the given table is compatible with
    the second rotation, which for brackets means antisymmetry.
    """
    n = alg.dim
    extra = [p for p in mu.patterns() if p != ADA]
    if extra:
        raise InputShapeError(f"closure expects only the {ADA} table, got {', '.join(map(str, extra))}")
    ada = mu.table(ADA)
    values = {}
    for (a, f, b, k), c in ada.items():
        xs = (a, n + f, b, n + k)
        phi = -c  # <c e_k, e_k^*> = -c
        values[xs] = phi
        degs = [flat_degree(n, x) for x in xs]
        values[xs[1:] + xs[:1]] = cyclic_sign(degs) * phi
    return from_cyclic_tensor(n, values)


def project_type_B(m3: TernaryOperation) -> TernaryOperation:
    return m3.restricted(TYPE_B_PATTERNS)


# --- Maurer-Cartan residuals -------------------------------------------------

def _apply_op(op, args):
    """Apply ``op`` (flat callable of fixed arity) where one arg may be a sparse dict."""
    for pos, a in enumerate(args):
        if isinstance(a, dict):
            out = {}
            for x, c in a.items():
                add_into(out, op(*args[:pos], x, *args[pos + 1:]), c)
            return out
    return op(*args)


def mc_residual_flat(alg: AssocAlgebra, m3: TernaryOperation, xs):
    """Arity-k component of ``[m, m]`` for ``m = m2 + m3`` on flat indices.

    Sum over inner arity q, outer arity p with p + q = k + 1 and insertion
    position i, with sign ``(-1)^(|x_1|' + ... + |x_{i-1}|')``.
    """
    n = alg.dim
    ops = {2: alg.m2_flat, 3: m3.apply_flat}
    k = len(xs)
    degs = [flat_degree(n, x) for x in xs]
    out = {}
    for q, inner in ops.items():
        p = k + 1 - q
        if p not in ops:
            continue
        outer = ops[p]
        for i in range(p):
            y = inner(*xs[i:i + q])
            if not y:
                continue
            sign = -1 if sum(degs[:i]) % 2 else 1
            args = list(xs[:i]) + [y] + list(xs[i + q:])
            add_into(out, _apply_op(outer, args), sign)
    return out


def _to_flat(alg, xs):
    return [x.flat(alg.dim) if isinstance(x, ExtIndex) else x for x in xs]


def mc_residual_4(alg, m3, x1, x2, x3, x4) -> ExtElement:
    return ExtElement.from_sparse(alg.dim, mc_residual_flat(alg, m3, _to_flat(alg, (x1, x2, x3, x4))))


def mc_residual_5(alg, m3, x1, x2, x3, x4, x5) -> ExtElement:
    return ExtElement.from_sparse(alg.dim, mc_residual_flat(alg, m3, _to_flat(alg, (x1, x2, x3, x4, x5))))


def mc_residual_3(alg, m3, x1, x2, x3) -> ExtElement:
    return ExtElement.from_sparse(alg.dim, mc3_residual_flat(alg, *_to_flat(alg, (x1, x2, x3))))


@dataclass
class MCReport:
    """All nonzero residuals of one Maurer-Cartan arity."""

    arity: int
    entries: list = field(default_factory=list)
    evaluated: int = 0

    @property
    def passed(self):
        return not self.entries

    def __bool__(self):
        return self.passed

    @property
    def witness(self):
        return self.entries[0][0] if self.entries else None

    def failing_patterns(self):
        return sorted({tuple("A" if not lbl.endswith("*") else "A*" for lbl in t) for t, _ in self.entries})

    def to_dict(self, max_entries=20):
        return {
            "arity": self.arity,
            "passed": self.passed,
            "evaluated": self.evaluated,
            "failures": len(self.entries),
            "entries": [
                {"inputs": list(t), "residual": format_residual(r)}
                for t, r in self.entries[:max_entries]
            ],
        }

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        line = f"{status}  MC{self.arity}  ({self.evaluated} tuples, {len(self.entries)} nonzero)"
        if self.entries:
            line += f"  witness={self.witness}"
        return line


def _mc_chunk(alg, m3, arity, first_values):
    n = alg.dim
    entries = []
    count = 0
    for x1 in first_values:
        for rest in product(range(2 * n), repeat=arity - 1):
            xs = (x1,) + rest
            count += 1
            if arity == 3:
                res = mc3_residual_flat(alg, *xs)
            else:
                res = mc_residual_flat(alg, m3, xs)
            if res:
                label = tuple(str(ExtIndex.from_flat(n, x)) for x in xs)
                named = {str(ExtIndex.from_flat(n, k)): v for k, v in res.items()}
                entries.append((label, named))
    return entries, count


def check_mc_arity(alg, m3, arity, jobs=1) -> MCReport:
    """Evaluate every extended basis tuple of the given arity (row-major)."""
    if arity not in (3, 4, 5):
        raise ValueError("arities beyond 5 vanish identically for m = m2 + m3")
    n = alg.dim
    firsts = list(range(2 * n))
    if jobs <= 1 or len(firsts) < 2:
        entries, count = _mc_chunk(alg, m3, arity, firsts)
        return MCReport(arity, entries, count)
    chunks = [firsts[i::jobs] for i in range(jobs)]
    chunks = [sorted(c) for c in chunks if c]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_mc_chunk, [alg] * len(chunks), [m3] * len(chunks),
                                [arity] * len(chunks), chunks))
    merged = []
    count = 0
    for entries, c in results:
        merged.extend(entries)
        count += c
    order = {str(ExtIndex.from_flat(n, x)): x for x in range(2 * n)}
    merged.sort(key=lambda e: tuple(order[lbl] for lbl in e[0]))
    return MCReport(arity, merged, count)


def check_maurer_cartan(alg: AssocAlgebra, m3: TernaryOperation, jobs=1):
    """Reports for arities 3, 4 and 5; higher arities hold vacuously."""
    if m3.dim != alg.dim:
        raise InputShapeError("operation and algebra dimensions differ")
    return {k: check_mc_arity(alg, m3, k, jobs) for k in (3, 4, 5)}
