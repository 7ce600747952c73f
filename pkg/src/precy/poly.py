"""Sparse multivariate polynomials with exact coefficients.

Variables are arbitrary sortable hashable labels; the representation-space
code uses ``(a, i, j)`` for the ``(i, j)`` entry of the matrix of basis
element ``a``. A monomial is a sorted tuple of ``(variable, exponent)``.
"""

from precy.scalars import ONE, ZERO, to_scalar


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


class CoordPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted((v, e) for v, e in mono if e))
            c = to_scalar(c)
            if c:
                clean[mono] = clean.get(mono, ZERO) + c
        self._terms = {m: c for m, c in sorted(clean.items()) if c}

    @classmethod
    def var(cls, v):
        return cls({((v, 1),): ONE})

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @property
    def terms(self):
        return dict(self._terms)

    def variables(self):
        return sorted({v for m in self._terms for v, _ in m})

    def degree(self):
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            other = CoordPoly.const(other)
        if not isinstance(other, CoordPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other):
        other = _lift(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, ZERO) + c
        return CoordPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return CoordPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        acc = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                acc[m] = acc.get(m, ZERO) + c1 * c2
        return CoordPoly(acc)

    __rmul__ = __mul__

    def derivative(self, v):
        acc = {}
        for m, c in self._terms.items():
            for idx, (w, e) in enumerate(m):
                if w == v:
                    rest = m[:idx] + (((w, e - 1),) if e > 1 else ()) + m[idx + 1:]
                    acc[rest] = acc.get(rest, ZERO) + c * e
        return CoordPoly(acc)

    def evaluate(self, values):
        """Evaluate with ``values`` a mapping or callable from variables to scalars."""
        get = values if callable(values) else values.__getitem__
        total = ZERO
        for m, c in self._terms.items():
            w = c
            for v, e in m:
                w *= get(v) ** e
            total += w
        return total

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms.items():
            mono = "*".join(f"x{list(v)}" + (f"^{e}" if e > 1 else "") for v, e in m)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _lift(x):
    return x if isinstance(x, CoordPoly) else CoordPoly.const(x)
