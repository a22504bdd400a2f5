"""Finite metric spaces up to the equality pattern of their distances.

A space on ``n`` points is stored as a symmetric matrix of color ids
(``-1`` on the diagonal). Numeric distances, when known, ride along as a
tuple indexed by color id. Only the equality pattern matters for the
quantum symmetry questions answered elsewhere in the package, so every
algorithm here works on colors and uses exact rationals when it needs
the values at all.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

MAX_CANONICAL_N = 9

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+|\d+/\d+)$")
_LETTER = re.compile(r"^[A-Za-z]$")


class SpaceFormatError(ValueError):
    """Malformed space document; carries a 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        return cls(n, frozenset(edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour sets as bitmasks."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def degrees(self) -> list[int]:
        return [bin(a).count("1") for a in self.adjacency]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        out = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp, frontier = 1 << v, 1 << v
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= self.adjacency[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append([u for u in range(self.n) if comp >> u & 1])
        return out

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image of the graph under ``i -> perm[i]``."""
        return Graph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class ColoredSpace:
    """Edge-colored complete graph; colors stand for distinct distances.

    ``matrix[i][j]`` is the color id of the pair ``{i, j}`` and ``-1`` on
    the diagonal. ``values[c]`` is the distance of color ``c`` if known.
    """

    n: int
    matrix: tuple[tuple[int, ...], ...]
    values: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a space needs at least one point")
        if len(self.matrix) != self.n or any(len(r) != self.n for r in self.matrix):
            raise ValueError("color matrix must be n x n")
        used = set()
        for i in range(self.n):
            if self.matrix[i][i] != -1:
                raise ValueError("diagonal of the color matrix must be -1")
            for j in range(i + 1, self.n):
                c = self.matrix[i][j]
                if c != self.matrix[j][i]:
                    raise ValueError(f"color matrix is not symmetric at ({i}, {j})")
                if c < 0:
                    raise ValueError(f"negative color id at ({i}, {j})")
                used.add(c)
        if used != set(range(len(used))):
            raise ValueError("color ids must be exactly 0..numColors-1")
        object.__setattr__(self, "_num_colors", len(used))
        if self.values is not None:
            if len(self.values) != len(used):
                raise ValueError("need exactly one value per color")
            if any(v <= 0 for v in self.values):
                raise ValueError("distances must be positive")
            if len(set(self.values)) != len(self.values):
                raise ValueError("distinct colors need distinct distances")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_coloring(cls, n: int, color: Callable[[int, int], object],
                      values: dict | None = None) -> ColoredSpace:
        """Build from any labelling of pairs; labels are renumbered by first
        occurrence in the row-major upper triangle. ``values`` maps the
        original labels to distances."""
        ids: dict[object, int] = {}
        m = [[-1] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lab = color(i, j)
                c = ids.setdefault(lab, len(ids))
                m[i][j] = m[j][i] = c
        vals = None
        if values is not None:
            vals = tuple(Fraction(values[lab]) for lab in ids)
        return cls(n, tuple(map(tuple, m)), vals)

    @classmethod
    def from_distances(cls, rows: Sequence[Sequence]) -> ColoredSpace:
        """Build from a full symmetric matrix of rational distances."""
        n = len(rows)
        vals = {}
        for i in range(n):
            for j in range(i + 1, n):
                vals[Fraction(rows[i][j])] = Fraction(rows[i][j])
        return cls.from_coloring(n, lambda i, j: Fraction(rows[i][j]), vals)

    @classmethod
    def from_word(cls, n: int, word: Sequence[int]) -> ColoredSpace:
        """Build from the row-major upper-triangle color word."""
        slots = list(combinations(range(n), 2))
        if len(word) != len(slots):
            raise ValueError(f"word length {len(word)} does not match n={n}")
        lookup = dict(zip(slots, word))
        return cls.from_coloring(n, lambda i, j: lookup[(i, j)])

    @classmethod
    def from_graph(cls, g: Graph) -> ColoredSpace:
        """Two-color space: edges of ``g`` against non-edges."""
        return cls.from_coloring(g.n, lambda i, j: g.has_edge(i, j))

    @classmethod
    def simplex(cls, n: int) -> ColoredSpace:
        return cls.from_coloring(n, lambda i, j: 0)

    # -- accessors --------------------------------------------------------

    @property
    def num_colors(self) -> int:
        return self._num_colors

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("the diagonal carries no color")
        return self.matrix[i][j]

    def word(self) -> tuple[int, ...]:
        """Row-major upper-triangle color word."""
        return tuple(self.matrix[i][j] for i in range(self.n) for j in range(i + 1, self.n))

    def distance(self, i: int, j: int) -> Fraction:
        if self.values is None:
            raise ValueError("space carries no numeric distances")
        return Fraction(0) if i == j else self.values[self.matrix[i][j]]

    def relabel(self, perm: Sequence[int]) -> ColoredSpace:
        """Image under ``i -> perm[i]``; colors and values are kept."""
        inv = [0] * self.n
        for i, p in enumerate(perm):
            inv[p] = i
        m = tuple(tuple(-1 if a == b else self.matrix[inv[a]][inv[b]] for b in range(self.n))
                  for a in range(self.n))
        return ColoredSpace(self.n, m, self.values)

    def __repr__(self) -> str:
        return f"ColoredSpace(n={self.n}, colors={self.num_colors}, word={self.word()})"


# -- parsing ----------------------------------------------------------------

def parse_space(text: str) -> ColoredSpace:
    """Parse the text format: a size line then ``n`` rows of ``n`` entries.

    Entries are decimal rationals (``1``, ``1.5``, ``3/2``) or single
    letters; diagonal entries are ``0`` or ``-``. Lines starting with
    ``#`` and blank lines are skipped.
    """
    lines = [(k + 1, ln) for k, ln in enumerate(text.splitlines())
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise SpaceFormatError("empty document")
    lineno, head = lines[0]
    try:
        n = int(head.strip())
    except ValueError:
        raise SpaceFormatError(f"expected the point count, got {head.strip()!r}", lineno, 1) from None
    if n < 1:
        raise SpaceFormatError("point count must be at least 1", lineno, 1)
    rows = lines[1:]
    if len(rows) != n:
        raise SpaceFormatError(f"expected {n} matrix rows, found {len(rows)}",
                               rows[-1][0] if rows else lineno)

    cells: list[list[tuple[str, int, int]]] = []
    for lineno, ln in rows:
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", ln)]
        if len(toks) != n:
            raise SpaceFormatError(f"expected {n} entries, found {len(toks)}", lineno)
        cells.append([(t, lineno, col) for t, col in toks])

    kinds = set()
    entries: list[list[object]] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            tok, ln, col = cells[i][j]
            if i == j:
                if tok == "-":
                    continue
                if _NUMBER.match(tok) and Fraction(tok) == 0:
                    continue
                raise SpaceFormatError(f"diagonal entry must be 0 or '-', got {tok!r}", ln, col)
            if _LETTER.match(tok):
                kinds.add("letter")
                entries[i][j] = tok
            elif _NUMBER.match(tok):
                kinds.add("number")
                val = Fraction(tok)
                if val <= 0:
                    raise SpaceFormatError(f"off-diagonal distance must be positive, got {tok}", ln, col)
                entries[i][j] = val
            else:
                raise SpaceFormatError(f"unrecognised entry {tok!r}", ln, col)
            if len(kinds) > 1:
                raise SpaceFormatError("mixed letter and number entries", ln, col)

    for i in range(n):
        for j in range(i + 1, n):
            if entries[i][j] != entries[j][i]:
                _, ln, col = cells[j][i]
                raise SpaceFormatError(
                    f"matrix is not symmetric: ({i + 1},{j + 1}) is {cells[i][j][0]} "
                    f"but ({j + 1},{i + 1}) is {cells[j][i][0]}", ln, col)

    values = None
    if kinds == {"number"}:
        values = {entries[i][j]: entries[i][j] for i in range(n) for j in range(i + 1, n)}
    return ColoredSpace.from_coloring(n, lambda i, j: entries[i][j], values)


def format_space(s: ColoredSpace, void: bool = False) -> str:
    """Render in the input format. With ``void=True`` the most frequent
    color is drawn as ``.`` (a display convention; not re-parseable)."""
    if s.values is not None:
        label = [_fmt_fraction(v) for v in s.values]
    else:
        label = [_color_letter(c) for c in range(s.num_colors)]
    if void and s.num_colors:
        counts = [0] * s.num_colors
        for c in s.word():
            counts[c] += 1
        top = max(range(s.num_colors), key=lambda c: (counts[c], -c))
        label[top] = "."
    diag = "0" if s.values is not None else "-"
    width = max([len(x) for x in label] + [1])
    lines = [str(s.n)]
    for i in range(s.n):
        lines.append(" ".join((diag if i == j else label[s.matrix[i][j]]).rjust(width)
                              for j in range(s.n)))
    return "\n".join(lines) + "\n"


def _fmt_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _color_letter(c: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    return letters[c] if c < len(letters) else f"c{c}"


# -- color components -------------------------------------------------------

def color_decomposition(s: ColoredSpace) -> list[tuple[int, Graph]]:
    edges: list[set] = [set() for _ in range(s.num_colors)]
    for i in range(s.n):
        for j in range(i + 1, s.n):
            edges[s.matrix[i][j]].add((i, j))
    return [(c, Graph(s.n, frozenset(e))) for c, e in enumerate(edges)]


def component(s: ColoredSpace, c: int) -> Graph:
    return merge_colors(s, {c})


def merge_colors(s: ColoredSpace, subset: Iterable[int]) -> Graph:
    """Union of the selected color components."""
    sel = set(subset)
    if not sel:
        raise ValueError("subset of colors must be nonempty")
    bad = [c for c in sel if not 0 <= c < s.num_colors]
    if bad:
        raise ValueError(f"unknown color id(s) {sorted(bad)}")
    return Graph(s.n, frozenset((i, j) for i in range(s.n) for j in range(i + 1, s.n)
                                if s.matrix[i][j] in sel))


def decolor(s: ColoredSpace, blocks: Iterable[Iterable[int]]) -> ColoredSpace:
    """Coarser space obtained by identifying the colors inside each block.
    Colors not mentioned in any block stay on their own."""
    merged = {}
    for b, block in enumerate(blocks):
        for c in block:
            merged[c] = b
    tag = {c: ("m", merged[c]) if c in merged else ("k", c) for c in range(s.num_colors)}
    return ColoredSpace.from_coloring(s.n, lambda i, j: tag[s.matrix[i][j]])


def complement_graph(g: Graph) -> Graph:
    return Graph(g.n, frozenset((i, j) for i in range(g.n) for j in range(i + 1, g.n)
                                if not g.has_edge(i, j)))


def is_simplex(s: ColoredSpace) -> bool:
    return s.num_colors <= 1


# -- canonical forms --------------------------------------------------------

def _lexmin_word(n: int, m: Sequence[Sequence[int]], rename: bool) -> tuple[int, ...]:
    """Lexicographically least column-major upper-triangle word over all
    relabelings, optionally renaming colors by first occurrence.

    Prefix pruning: the first ``k(k-1)/2`` letters only depend on the
    first ``k`` chosen points, so every level keeps just the candidates
    tying for the least prefix.
    """
    if n > MAX_CANONICAL_N:
        raise ValueError(f"canonical form needs n <= {MAX_CANONICAL_N}, got {n}")
    # candidate: (chosen points, rename table, next fresh id)
    cands = [((), {}, 0)]
    word: list[int] = []
    for depth in range(n):
        best = None
        nxt = []
        for chosen, ren, fresh in cands:
            for v in range(n):
                if v in chosen:
                    continue
                col = []
                r2, f2 = ren, fresh
                for u in chosen:
                    c = m[u][v]
                    if rename:
                        if c not in r2:
                            if r2 is ren:
                                r2 = dict(ren)
                            r2[c] = f2
                            f2 += 1
                        c = r2[c]
                    col.append(c)
                col = tuple(col)
                if best is None or col < best:
                    best = col
                    nxt = [(chosen + (v,), r2, f2)]
                elif col == best:
                    nxt.append((chosen + (v,), r2, f2))
        word.extend(best)
        cands = nxt
    return tuple(word)


def canonical_form(s: ColoredSpace) -> bytes:
    """Key equal for two spaces iff they agree up to relabeling points
    and renaming colors."""
    return bytes([s.n]) + bytes(_lexmin_word(s.n, s.matrix, rename=True))


def graph_canonical_form(g: Graph) -> bytes:
    """Key equal for two graphs iff they are isomorphic (edges stay edges)."""
    m = [[-1 if i == j else int(g.has_edge(i, j)) for j in range(g.n)] for i in range(g.n)]
    return bytes([g.n]) + bytes(_lexmin_word(g.n, m, rename=False))


def space_from_key(key: bytes) -> ColoredSpace:
    n = key[0]
    word = key[1:]
    m = [[-1] * n for _ in range(n)]
    k = 0
    for j in range(n):
        for i in range(j):
            m[i][j] = m[j][i] = word[k]
            k += 1
    return ColoredSpace.from_coloring(n, lambda i, j: m[i][j])


def graph_from_key(key: bytes) -> Graph:
    n = key[0]
    word = key[1:]
    edges, k = [], 0
    for j in range(n):
        for i in range(j):
            if word[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# -- metric side ------------------------------------------------------------

def validate_metric(s: ColoredSpace) -> list[str]:
    """One warning per pair ``(i, k)`` and intermediate ``j`` breaking the
    triangle inequality ``d(i,k) <= d(i,j) + d(j,k)``."""
    if s.values is None:
        raise ValueError("triangle check needs numeric distances")
    out = []
    for i, k in combinations(range(s.n), 2):
        for j in range(s.n):
            if j in (i, k):
                continue
            lhs = s.distance(i, k)
            rhs = s.distance(i, j) + s.distance(j, k)
            if lhs > rhs:
                out.append(f"d({i},{k}) = {lhs} > d({i},{j}) + d({j},{k}) = {rhs}")
    return out


def build_disjoint_union(macro: ColoredSpace, micros: Sequence[ColoredSpace]) -> ColoredSpace:
    """Blow up every point of ``macro`` into the matching micro-space.

    Between blocks ``i != j`` the distance is ``macro(i, j)``; inside block
    ``i`` it is the micro-space's own. Requires ``2 D(i,j) >= d_i(p,q)``.
    """
    if len(micros) != macro.n:
        raise ValueError(f"macro space has {macro.n} points but {len(micros)} micro-spaces given")
    if macro.values is None or any(z.values is None for z in micros):
        raise ValueError("disjoint union needs numeric distances everywhere")
    for i in range(macro.n):
        dmax = max(micros[i].values, default=Fraction(0))
        for j in range(macro.n):
            if i != j and 2 * macro.distance(i, j) < dmax:
                raise ValueError(
                    f"2*D({i},{j}) = {2 * macro.distance(i, j)} < {dmax}, a distance inside block {i}")
    owner, local = [], []
    for b, z in enumerate(micros):
        owner += [b] * z.n
        local += list(range(z.n))
    total = len(owner)

    def dist(p, q):
        bp, bq = owner[p], owner[q]
        if bp == bq:
            return micros[bp].distance(local[p], local[q])
        return macro.distance(bp, bq)

    vals = {dist(p, q): dist(p, q) for p in range(total) for q in range(p + 1, total)}
    return ColoredSpace.from_coloring(total, dist, vals)


def build_simplex_product(m: int, s: int, A, a) -> ColoredSpace:
    """``m`` blocks of ``s`` points: distance ``a`` inside a block, ``A``
    between blocks. Block ``b`` is the points ``b*s .. b*s + s - 1``."""
    A, a = Fraction(A), Fraction(a)
    if m < 2 or s < 2:
        raise ValueError("need at least 2 blocks of at least 2 points")
    if A <= 0 or a <= 0:
        raise ValueError("distances must be positive")
    if A == a:
        raise ValueError("the two distances must differ")
    if 2 * A < a:
        raise ValueError("need 2A >= a")
    return ColoredSpace.from_coloring(m * s, lambda i, j: a if i // s == j // s else A, {a: a, A: A})
