"""Temperley-Lieb and Fuss-Catalan diagram calculus.

A :class:`PairingDiagram` is a perfect matching of ``bottom + top``
boundary points. Point labels are ``0..bottom-1`` for the bottom row and
``bottom..bottom+top-1`` for the top row, both read left to right. For
the noncrossing condition the boundary is read cyclically: bottom left
to right, then top right to left.

Composition ``A∘B`` puts ``A`` on top of ``B``. Closed loops are erased
against a weight per color: ``None`` for plain TL strings, ``"y"`` and
``"z"`` for the two Fuss-Catalan colors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, isqrt
from typing import Mapping, Sequence

from .quadfield import QuadScalar, rank

FC_PATTERN = "yzzy"
MAX_TL_K = 5
MAX_FC_K = 4


@dataclass(frozen=True)
class PairingDiagram:
    bottom: int
    top: int
    pairs: tuple[tuple[int, int], ...]
    colors: tuple[str, ...] | None = None

    def __post_init__(self):
        npts = self.bottom + self.top
        pairs = tuple(sorted((min(p), max(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        flat = sorted(x for p in pairs for x in p)
        if flat != list(range(npts)):
            raise ValueError("pairs must be a perfect matching of the boundary points")
        if self.colors is not None:
            if len(self.colors) != npts:
                raise ValueError("one color per boundary point required")
            for p, q in pairs:
                if self.colors[p] != self.colors[q]:
                    raise ValueError(f"string ({p}, {q}) joins different colors")
        pos = [self.position(p) for p in range(npts)]
        arcs = [tuple(sorted((pos[p], pos[q]))) for p, q in pairs]
        for i, (a, b) in enumerate(arcs):
            for c, d in arcs[i + 1:]:
                if a < c < b < d or c < a < d < b:
                    raise ValueError("diagram has crossing strings")

    def position(self, label: int) -> int:
        """Cyclic boundary position of a point label."""
        if label < self.bottom:
            return label
        return self.bottom + self.top - 1 - (label - self.bottom)

    def partner(self) -> dict[int, int]:
        out = {}
        for p, q in self.pairs:
            out[p], out[q] = q, p
        return out

    def bottom_colors(self):
        return None if self.colors is None else self.colors[:self.bottom]

    def top_colors(self):
        return None if self.colors is None else self.colors[self.bottom:]


@dataclass(frozen=True)
class WeightedDiagram:
    scalar: QuadScalar
    diagram: PairingDiagram

    def __post_init__(self):
        if not self.scalar:
            raise ValueError("weighted diagrams carry a nonzero scalar")

    @property
    def bottom(self) -> int:
        return self.diagram.bottom

    @property
    def top(self) -> int:
        return self.diagram.top


def _one() -> QuadScalar:
    return QuadScalar.rational(1)


def weighted(d: PairingDiagram, scalar: QuadScalar | None = None) -> WeightedDiagram:
    return WeightedDiagram(_one() if scalar is None else scalar, d)


# -- the three operations ---------------------------------------------------

def compose(A: WeightedDiagram, B: WeightedDiagram,
            weights: Mapping[str | None, QuadScalar]) -> WeightedDiagram:
    """``A`` stacked over ``B``; every closed loop multiplies the scalar by
    the weight of its color."""
    a, b = A.diagram, B.diagram
    if b.top != a.bottom:
        raise ValueError(f"cannot stack: lower diagram has {b.top} top points, "
                         f"upper has {a.bottom} bottom points")
    if b.top_colors() != a.bottom_colors():
        raise ValueError("middle row colors do not match")
    mid = b.top
    # nodes: ("b", i) lower boundary, ("m", j) middle row, ("t", i) upper boundary;
    # every node has at most one link per diagram
    link: dict[tuple[tuple, str], tuple] = {}

    def node_b(p):
        return ("b", p) if p < b.bottom else ("m", p - b.bottom)

    def node_a(p):
        return ("m", p) if p < a.bottom else ("t", p - a.bottom)

    for p, q in b.pairs:
        u, v = node_b(p), node_b(q)
        link[u, "B"], link[v, "B"] = v, u
    for p, q in a.pairs:
        u, v = node_a(p), node_a(q)
        link[u, "A"], link[v, "A"] = v, u

    def label(node):
        return node[1] if node[0] == "b" else b.bottom + node[1]

    seen: set = set()
    pairs = []
    ends = [(("b", i), "B") for i in range(b.bottom)] + [(("t", i), "A") for i in range(a.top)]
    for start, side in ends:
        if start in seen:
            continue
        cur = start
        while True:
            seen.add(cur)
            cur = link[cur, side]
            side = "A" if side == "B" else "B"
            if cur[0] != "m":
                break
        seen.add(cur)
        pairs.append((label(start), label(cur)))

    scalar = A.scalar * B.scalar
    mid_colors = b.top_colors()
    for j in range(mid):
        start = ("m", j)
        if start in seen:
            continue
        cur, side = start, "A"
        while True:
            seen.add(cur)
            cur = link[cur, side]
            side = "A" if side == "B" else "B"
            if cur == start:
                break
        color = None if mid_colors is None else mid_colors[j]
        scalar = scalar * weights[color]

    colors = None
    if b.colors is not None:
        colors = b.bottom_colors() + a.top_colors()
    return WeightedDiagram(scalar, PairingDiagram(b.bottom, a.top, tuple(pairs), colors))


def tensor(A: WeightedDiagram, B: WeightedDiagram) -> WeightedDiagram:
    """``A`` to the left of ``B``."""
    a, b = A.diagram, B.diagram
    bot = a.bottom + b.bottom

    def la(p):
        return p if p < a.bottom else bot + (p - a.bottom)

    def lb(p):
        return a.bottom + p if p < b.bottom else bot + a.top + (p - b.bottom)

    pairs = [(la(p), la(q)) for p, q in a.pairs] + [(lb(p), lb(q)) for p, q in b.pairs]
    colors = None
    if a.colors is not None or b.colors is not None:
        if a.colors is None and a.bottom + a.top:
            raise ValueError("cannot tensor colored with uncolored diagrams")
        if b.colors is None and b.bottom + b.top:
            raise ValueError("cannot tensor colored with uncolored diagrams")
        ac, bc = a.colors or (), b.colors or ()
        colors = ac[:a.bottom] + bc[:b.bottom] + ac[a.bottom:] + bc[b.bottom:]
    return WeightedDiagram(A.scalar * B.scalar,
                           PairingDiagram(bot, a.top + b.top, tuple(pairs), colors))


def involute(A: WeightedDiagram) -> WeightedDiagram:
    """Upside-down turn: the two rows swap, left stays left."""
    a = A.diagram

    def flip(p):
        return a.top + p if p < a.bottom else p - a.bottom

    colors = None if a.colors is None else a.top_colors() + a.bottom_colors()
    return WeightedDiagram(A.scalar.conjugate(),
                           PairingDiagram(a.top, a.bottom, tuple((flip(p), flip(q)) for p, q in a.pairs),
                                          colors))


# -- enumeration ------------------------------------------------------------

def _noncrossing(colors: tuple) -> list[tuple[tuple[int, int], ...]]:
    """All noncrossing perfect matchings of points ``0..N-1`` on a line
    (equivalently a circle) that only join equal colors."""

    @lru_cache(maxsize=None)
    def seg(lo: int, hi: int) -> tuple:
        if lo >= hi:
            return ((),)
        out = []
        for j in range(lo + 1, hi, 2):
            if colors[lo] != colors[j]:
                continue
            for inner in seg(lo + 1, j):
                for outer in seg(j + 1, hi):
                    out.append(((lo, j),) + inner + outer)
        return tuple(out)

    if len(colors) % 2:
        return []
    return list(seg(0, len(colors)))


def _enumerate(bottom: int, top: int, row_colors) -> list[PairingDiagram]:
    """``row_colors(k)`` gives the colors of a row of ``k`` points, or None."""
    bc, tc = row_colors(bottom), row_colors(top)
    npts = bottom + top

    def label(pos):
        return pos if pos < bottom else bottom + (npts - 1 - pos)

    if bc is None:
        cyc = (None,) * npts
        colors = None
    else:
        cyc = tuple(bc) + tuple(reversed(tc))
        colors = tuple(bc) + tuple(tc)
    out = []
    for match in _noncrossing(cyc):
        pairs = tuple((label(p), label(q)) for p, q in match)
        out.append(PairingDiagram(bottom, top, pairs, colors))
    out.sort(key=lambda d: d.pairs)
    return out


def fc_colors(points: int) -> tuple[str, ...]:
    return tuple(FC_PATTERN[i % 4] for i in range(points))


def enumerate_tl(k: int, l: int) -> list[PairingDiagram]:
    """TL diagrams from ``2k`` bottom to ``2l`` top points."""
    if k < 0 or l < 0:
        raise ValueError("k, l must be nonnegative")
    return _enumerate(2 * k, 2 * l, lambda _: None)


def enumerate_fc(k: int, l: int) -> list[PairingDiagram]:
    """Fuss-Catalan diagrams from ``4k`` to ``4l`` points colored y,z,z,y,..."""
    if k < 0 or l < 0:
        raise ValueError("k, l must be nonnegative")
    return _enumerate(4 * k, 4 * l, fc_colors)


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def fuss_catalan(k: int) -> int:
    return comb(3 * k, k) // (2 * k + 1)


# -- families and generators ------------------------------------------------

@dataclass(frozen=True)
class TL:
    """Temperley-Lieb category with loop value ``sqrt(n)``."""
    n: int

    def weights(self) -> dict:
        return {None: QuadScalar.sqrt(self.n)}

    def diagrams(self, k: int) -> list[PairingDiagram]:
        return enumerate_tl(0, k)

    @property
    def max_k(self) -> int:
        return MAX_TL_K

    def __str__(self) -> str:
        return f"TL({self.n})"


@dataclass(frozen=True)
class FC:
    """Fuss-Catalan category with loop values ``sqrt(m)`` (y) and ``sqrt(s)`` (z)."""
    m: int
    s: int

    def weights(self) -> dict:
        return {"y": QuadScalar.sqrt(self.m), "z": QuadScalar.sqrt(self.s)}

    def diagrams(self, k: int) -> list[PairingDiagram]:
        return enumerate_fc(0, k)

    @property
    def max_k(self) -> int:
        return MAX_FC_K

    def __str__(self) -> str:
        return f"FC({self.m},{self.s})"


def identity(points: int, colors: Sequence[str] | None = None) -> WeightedDiagram:
    cols = None if colors is None else tuple(colors) * 2
    return weighted(PairingDiagram(points, points, tuple((i, points + i) for i in range(points)), cols))


def _fourth_root(n: int) -> QuadScalar:
    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"sqrt(sqrt({n})) is not representable with square roots; "
                         "use a perfect-square parameter")
    return QuadScalar.sqrt(r)


def tl_generators(n: int) -> dict[str, WeightedDiagram]:
    """Multiplication ``M`` (2 -> 1 pairs of points) and unit ``U`` (0 -> 1).

    Their scalars are ``±1/2`` powers of ``sqrt(n)``, so ``n`` must be a
    perfect square for them to live in the field.
    """
    h = _fourth_root(n)
    M = PairingDiagram(4, 2, ((0, 4), (1, 2), (3, 5)))
    U = PairingDiagram(0, 2, ((0, 1),))
    return {"M": WeightedDiagram(h, M), "U": WeightedDiagram(h.inverse(), U)}


def fc_generators(m: int, s: int) -> dict[str, WeightedDiagram]:
    """``M``, ``U`` and the projection ``E = sqrt(s)^-1 |∪∩|``."""
    h = _fourth_root(m * s)
    M = PairingDiagram(8, 4, ((0, 8), (1, 9), (3, 4), (2, 5), (6, 10), (7, 11)),
                       fc_colors(8) + fc_colors(4))
    U = PairingDiagram(0, 4, ((0, 3), (1, 2)), fc_colors(4))
    E = PairingDiagram(4, 4, ((0, 4), (1, 2), (5, 6), (3, 7)), fc_colors(4) * 2)
    return {"M": WeightedDiagram(h, M), "U": WeightedDiagram(h.inverse(), U),
            "E": WeightedDiagram(QuadScalar.sqrt(s).inverse(), E)}


# -- Gram ranks -------------------------------------------------------------

def gram_matrix(family, k: int) -> list[list[QuadScalar]]:
    """Pairings ``<D, D'> = involute(D) ∘ D'`` over the diagrams ``0 -> k``."""
    ds = [weighted(d) for d in family.diagrams(k)]
    w = family.weights()
    out = []
    for d in ds:
        dstar = involute(d)
        row = []
        for e in ds:
            r = compose(dstar, e, w)
            assert r.bottom == 0 and r.top == 0
            row.append(r.scalar)
        out.append(row)
    return out


def gram_rank(family, k: int) -> int:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > family.max_k:
        raise ValueError(f"{family}: k <= {family.max_k} required, got {k}")
    return rank(gram_matrix(family, k))


@dataclass(frozen=True)
class DimRow:
    k: int
    diagrams: int
    rank: int
    classical: int

    @property
    def gap(self) -> int:
        return self.classical - self.rank


def quantum_vs_classical(family, orbit_counts: Sequence[int], max_k: int | None = None) -> list[DimRow]:
    """Row ``k`` compares the Gram rank with the classical orbit count on
    ``X^k`` (``orbit_counts[k]``); a rank above the classical count is an
    error, since the classical group sits inside the quantum one."""
    if max_k is not None and len(orbit_counts) != max_k + 1:
        raise ValueError(f"need {max_k + 1} orbit counts, got {len(orbit_counts)}")
    rows = []
    for k, classical in enumerate(orbit_counts):
        r = gram_rank(family, k)
        if r > classical:
            raise ValueError(f"{family}, k={k}: rank {r} exceeds classical count {classical}")
        rows.append(DimRow(k, len(family.diagrams(k)), r, classical))
    return rows
