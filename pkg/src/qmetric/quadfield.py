"""Exact arithmetic in multiquadratic fields ``Q(sqrt(d1), sqrt(d2), ...)``.

An element is a finite sum ``sum c_d * sqrt(d)`` with rational ``c_d`` and
square-free ``d >= 1``. Distinct square-free radicals are linearly
independent over the rationals, so this representation is unique.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """``n = f*f*r`` with ``r`` square-free; returns ``(f, r)``."""
    if n <= 0:
        raise ValueError("positive integer expected")
    f, r, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        if n % p == 0:
            n //= p
            r *= p
        p += 1
    return f, r * n


class QuadScalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        t: dict[int, Fraction] = {}
        for d, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            f, r = squarefree_split(d)
            t[r] = t.get(r, Fraction(0)) + c * f
            if t[r] == 0:
                del t[r]
        self._terms = dict(sorted(t.items()))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> QuadScalar:
        # terms already square-free and nonzero
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> QuadScalar:
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q) -> QuadScalar:
        """Square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        if q == 0:
            return cls()
        # sqrt(a/b) = sqrt(a*b)/b
        return cls({q.numerator * q.denominator: Fraction(1, q.denominator)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def radicals(self) -> tuple[int, ...]:
        return tuple(self._terms)

    def is_rational(self) -> bool:
        return all(d == 1 for d in self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadScalar):
            try:
                other = QuadScalar.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> QuadScalar:
        if isinstance(other, QuadScalar):
            return other
        return QuadScalar.rational(other)

    def __add__(self, other) -> QuadScalar:
        other = self._coerce(other)
        t = dict(self._terms)
        for d, c in other._terms.items():
            v = t.get(d, 0) + c
            if v:
                t[d] = v
            else:
                t.pop(d, None)
        return QuadScalar._raw(t)

    __radd__ = __add__

    def __neg__(self) -> QuadScalar:
        return QuadScalar._raw({d: -c for d, c in self._terms.items()})

    def __sub__(self, other) -> QuadScalar:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QuadScalar:
        return self._coerce(other) - self

    def __mul__(self, other) -> QuadScalar:
        other = self._coerce(other)
        t: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                f, r = _radical_product(d1, d2)
                t[r] = t.get(r, 0) + c1 * c2 * f
        return QuadScalar._raw({d: c for d, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QuadScalar:
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QuadScalar.rational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> QuadScalar:
        """Solve ``self * y = 1`` in the basis generated by the radicals
        that occur in ``self``."""
        if not self:
            raise ZeroDivisionError("division by zero in QuadScalar")
        if len(self._terms) == 1:
            (d, c), = self._terms.items()
            # 1/(c sqrt d) = sqrt(d) / (c d)
            return QuadScalar._raw({d: 1 / (c * d)})
        basis = radical_basis(self._terms)
        idx = {b: i for i, b in enumerate(basis)}
        size = len(basis)
        # column j holds self * sqrt(basis[j])
        mat = [[Fraction(0)] * size for _ in range(size)]
        for j, b in enumerate(basis):
            for d, c in self._terms.items():
                f, r = _radical_product(d, b)
                mat[idx[r]][j] += c * f
        rhs = [Fraction(0)] * size
        rhs[idx[1]] = Fraction(1)
        sol = _solve(mat, rhs)
        return QuadScalar._raw({b: x for b, x in zip(basis, sol) if x})

    def __truediv__(self, other) -> QuadScalar:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> QuadScalar:
        return self._coerce(other) * self.inverse()

    def conjugate(self) -> QuadScalar:
        # real radicals with rational coefficients: complex conjugation is trivial
        return self

    def __float__(self) -> float:
        return float(sum(float(c) * d ** 0.5 for d, c in self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in self._terms.items():
            if d == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"√{d}")
            else:
                parts.append(f"{c}·√{d}")
        return " + ".join(parts)


@lru_cache(maxsize=4096)
def _radical_product(a: int, b: int) -> tuple[int, int]:
    """``sqrt(a)*sqrt(b) = f*sqrt(r)`` for square-free ``a, b``."""
    g = gcd(a, b)
    return g, (a // g) * (b // g)


def radical_basis(radicals: Iterable[int]) -> list[int]:
    """Square-free numbers reachable as products of the given radicals;
    a rational basis of the field they generate."""
    basis = {1}
    for d in radicals:
        if d in basis:
            continue
        basis |= {_radical_product(d, b)[1] for b in basis}
    return sorted(basis)


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def rank(matrix: list[list[QuadScalar]]) -> int:
    """Rank by Gaussian elimination with exact field division."""
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        pivot_row = [x * inv for x in rows[r]]
        rows[r] = pivot_row
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pivot_row)]
        r += 1
        if r == len(rows):
            break
    return r
