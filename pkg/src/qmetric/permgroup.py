"""Classical automorphism groups of small colored spaces and graphs.

Permutations are plain tuples of images. Groups are small enough (at most
``9!`` elements) to be stored as full element lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .space import ColoredSpace, Graph

MAX_N = 9
DIRECT_LIMIT = 10**7

Permutation = tuple[int, ...]


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``: ``i -> p[q[i]]``."""
    return tuple(p[i] for i in q)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def identity(n: int) -> Permutation:
    return tuple(range(n))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def cycle_notation(p: Permutation) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def closure(gens: Iterable[Permutation], n: int) -> set[Permutation]:
    """Subgroup generated by ``gens``."""
    gens = list(gens)
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = compose(g, h)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class PermutationGroup:
    n: int
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...]

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[Permutation]) -> PermutationGroup:
        els = tuple(sorted(set(elements)))
        return cls(n, els, _greedy_generators(n, els))

    @classmethod
    def generated_by(cls, n: int, gens: Iterable[Permutation]) -> PermutationGroup:
        return cls.from_elements(n, closure(gens, n))

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbits(self) -> list[list[int]]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i in range(self.n):
                a, b = find(i), find(g[i])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def is_transitive(self) -> bool:
        return len(self.orbits()) <= 1

    def __contains__(self, p) -> bool:
        return tuple(p) in self._set

    @property
    def _set(self) -> frozenset:
        cache = self.__dict__.get("_elset")
        if cache is None:
            cache = frozenset(self.elements)
            object.__setattr__(self, "_elset", cache)
        return cache

    def summary(self) -> str:
        return f"order {self.order}, generators " + (
            " ".join(cycle_notation(g) for g in self.generators) or "none")


def _greedy_generators(n: int, elements: Sequence[Permutation]) -> tuple[Permutation, ...]:
    gens: list[Permutation] = []
    span = {identity(n)}
    for g in elements:
        if g in span:
            continue
        gens.append(g)
        span = closure(gens, n)
        if len(span) == len(elements):
            break
    return tuple(gens)


def symmetric_group(n: int) -> PermutationGroup:
    if n > MAX_N:
        raise ValueError(f"n <= {MAX_N} required")
    return PermutationGroup.from_elements(n, permutations(range(n)))


# -- backtracking -----------------------------------------------------------

def _search(n: int, m: Sequence[Sequence[int]], order: Sequence[int], fixed: dict[int, int],
            first_only: bool) -> list[Permutation]:
    """All permutations preserving the color matrix ``m`` and extending
    ``fixed``; points are assigned in ``order``, each new image checked
    against every earlier assignment."""
    profile = [tuple(sorted(m[i][j] for j in range(n) if j != i)) for i in range(n)]
    img = [-1] * n
    used = [False] * n
    found: list[Permutation] = []
    placed: list[int] = []

    def consistent(v, w):
        if profile[v] != profile[w]:
            return False
        for u in placed:
            if m[u][v] != m[img[u]][w]:
                return False
        return True

    def rec(k):
        if k == n:
            found.append(tuple(img))
            return first_only
        v = order[k]
        targets = [fixed[v]] if v in fixed else range(n)
        for w in targets:
            if used[w] or not consistent(v, w):
                continue
            img[v], used[w] = w, True
            placed.append(v)
            stop = rec(k + 1)
            placed.pop()
            img[v], used[w] = -1, False
            if stop:
                return True
        return False

    rec(0)
    return found


def _bfs_order(n: int, adj: Sequence[int], start: int) -> list[int]:
    order, seen = [start], 1 << start
    i = 0
    while len(order) < n:
        if i == len(order):
            v = next(u for u in range(n) if not seen >> u & 1)
            order.append(v)
            seen |= 1 << v
            continue
        a = adj[order[i]] & ~seen
        while a:
            low = a & -a
            order.append(low.bit_length() - 1)
            seen |= low
            a ^= low
        i += 1
    return order


def automorphism_group(s: ColoredSpace) -> PermutationGroup:
    """All color-preserving permutations, in lexicographic order."""
    if s.n > MAX_N:
        raise ValueError(f"automorphism search limited to n <= {MAX_N}, got {s.n}")
    els = _search(s.n, s.matrix, list(range(s.n)), {}, first_only=False)
    return PermutationGroup.from_elements(s.n, els)


def graph_automorphism_group(g: Graph) -> PermutationGroup:
    return automorphism_group(ColoredSpace.from_graph(g))


def _graph_matrix(g: Graph) -> list[list[int]]:
    return [[-1 if i == j else int(g.has_edge(i, j)) for j in range(g.n)] for i in range(g.n)]


def find_automorphism(g: Graph, src: int, dst: int) -> Permutation | None:
    m = _graph_matrix(g)
    order = _bfs_order(g.n, g.adjacency, src)
    res = _search(g.n, m, order, {src: dst}, first_only=True)
    return res[0] if res else None


def is_vertex_transitive(g: Graph) -> bool:
    """Per-target backtracking from vertex 0; orbit grows under the
    automorphisms found so far, so most targets need no search."""
    if g.n > MAX_N:
        raise ValueError(f"n <= {MAX_N} required, got {g.n}")
    if g.n <= 1:
        return True
    if not g.is_regular():
        return False
    gens: list[Permutation] = []
    orbit = {0}
    for v in range(1, g.n):
        if v in orbit:
            continue
        a = find_automorphism(g, 0, v)
        if a is None:
            return False
        gens.append(a)
        frontier = list(orbit)
        while frontier:
            x = frontier.pop()
            for h in gens:
                y = h[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
    return True


# -- orbit counting ---------------------------------------------------------

def fixed_points(p: Permutation) -> int:
    return sum(1 for i, x in enumerate(p) if i == x)


def burnside_count(G: PermutationGroup, k: int) -> int:
    """Orbits of ``G`` on ``X^k``: the average of ``fix(g)^k``."""
    total = sum(fixed_points(g) ** k for g in G.elements)
    q = Fraction(total, G.order)
    if q.denominator != 1:
        raise ArithmeticError("Burnside average is not an integer")
    return int(q)


def direct_orbit_count(G: PermutationGroup, k: int) -> int:
    """Orbits of ``G`` on ``X^k`` as connected components of the graph
    joining each tuple to its images under the generators."""
    n = G.n
    size = n ** k
    if size > DIRECT_LIMIT:
        raise ValueError(f"n^k = {size} exceeds the direct-enumeration bound {DIRECT_LIMIT}")
    if k == 0:
        return 1
    if not G.generators:
        return size
    idx = np.arange(size, dtype=np.int64)
    digits = [(idx // n ** p) % n for p in range(k)]
    rows, cols = [], []
    for g in G.generators:
        ga = np.asarray(g, dtype=np.int64)
        img = sum(ga[d] * n ** p for p, d in enumerate(digits))
        rows.append(idx)
        cols.append(img)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(size, size))
    count, _ = connected_components(graph, directed=False)
    return int(count)


def orbit_count_on_tuples(G: PermutationGroup, k: int, cross_check_limit: int = 10**5) -> int:
    """Orbits of ``G`` acting diagonally on ``X^k``.

    Burnside's average always; when ``n^k <= cross_check_limit`` the
    direct component count must agree.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    b = burnside_count(G, k)
    if G.n ** k <= cross_check_limit:
        d = direct_orbit_count(G, k)
        if d != b:
            raise ArithmeticError(f"Burnside gives {b} but direct enumeration gives {d}")
    return b

