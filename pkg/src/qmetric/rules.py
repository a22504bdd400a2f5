"""Detectors for the geometric rules that settle commutativity or
non-transitivity of the quantum symmetry of a colored space.

Every positive finding comes with a :class:`RuleWitness` that
:func:`revalidate` can check against the space independently of the
search that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .permgroup import is_vertex_transitive
from .space import ColoredSpace, Graph, color_decomposition, component, merge_colors


@dataclass(frozen=True)
class RuleWitness:
    rule: str
    colors: tuple[int, ...]
    labeling: tuple[int, ...] = ()
    detail: str = ""
    # point blocks for rules whose pattern is a partition (cycles, cliques)
    blocks: tuple[tuple[int, ...], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "colors": list(self.colors),
            "labeling": list(self.labeling),
            "blocks": [list(b) for b in self.blocks],
            "detail": self.detail,
        }

    @classmethod
    def from_json(cls, d: dict) -> RuleWitness:
        return cls(d["rule"], tuple(d["colors"]), tuple(d["labeling"]), d["detail"],
                   tuple(tuple(b) for b in d["blocks"]))


def _cycle_order(g: Graph, verts: list[int]) -> tuple[int, ...] | None:
    """Walk a connected 2-regular vertex set as a cycle, starting from its
    smallest vertex toward its smaller neighbour."""
    start = verts[0]
    nbrs = sorted(u for u in verts if g.has_edge(start, u))
    if len(nbrs) != 2:
        return None
    order, prev, cur = [start], start, nbrs[0]
    while cur != start:
        order.append(cur)
        nxt = [u for u in verts if g.has_edge(cur, u) and u != prev]
        if len(nxt) != 1:
            return None
        prev, cur = cur, nxt[0]
    return tuple(order) if len(order) == len(verts) else None


def hamiltonian_cycle(g: Graph) -> tuple[int, ...] | None:
    """The cycle order if ``g`` is a single cycle through all its vertices."""
    if g.n < 3 or any(d != 2 for d in g.degrees()):
        return None
    comps = g.components()
    if len(comps) != 1:
        return None
    return _cycle_order(g, comps[0])


def _is_perfect_matching(g: Graph) -> bool:
    return all(d == 1 for d in g.degrees())


# -- the rules --------------------------------------------------------------

def magic_rule_check(s: ColoredSpace) -> RuleWitness | None:
    """``None`` when every color component is regular, else a witness
    naming a color and two points of different degree in it."""
    for c, g in color_decomposition(s):
        deg = g.degrees()
        for v in range(1, s.n):
            if deg[v] != deg[0]:
                return RuleWitness("magic", (c,), (0, v),
                                   f"color {c}: point 0 has degree {deg[0]}, point {v} has {deg[v]}")
    return None


def find_unbalanced_bicycle(s: ColoredSpace) -> RuleWitness | None:
    """A color whose component is two disjoint cycles of unequal lengths."""
    for c, g in color_decomposition(s):
        if any(d != 2 for d in g.degrees()):
            continue
        comps = g.components()
        if len(comps) != 2 or len(comps[0]) == len(comps[1]):
            continue
        cycles = tuple(_cycle_order(g, comp) for comp in comps)
        return RuleWitness("bicycle", (c,), cycles[0] + cycles[1],
                           f"color {c} is C{len(cycles[0])} + C{len(cycles[1])}", cycles)
    return None


def find_hamiltonian_merge(s: ColoredSpace) -> RuleWitness | None:
    """Least color subset (as a sorted tuple) whose merged component is a
    Hamiltonian cycle; singletons are the plain cyclic colors."""
    if s.n < 5:
        raise ValueError("the cycle rule needs at least 5 points")
    # a spanning cycle has exactly n edges, which prunes the subset tree
    sizes = [len(g.edges) for _, g in color_decomposition(s)]

    def dfs(prefix, total):
        # preorder over increasing tuples is lexicographic order
        for c in range((prefix[-1] + 1) if prefix else 0, s.num_colors):
            sub, t = prefix + (c,), total + sizes[c]
            if t > s.n:
                continue
            if t == s.n:
                cyc = hamiltonian_cycle(merge_colors(s, sub))
                if cyc is not None:
                    return RuleWitness("cycle", sub, cyc, f"colors {list(sub)} merge into C{s.n}")
            found = dfs(sub, t)
            if found:
                return found
        return None

    return dfs((), 0)


def find_star(s: ColoredSpace) -> RuleWitness | None:
    """Two perfect-matching colors whose union is one cycle alternating
    between them. The labeling lists the cycle so that positions
    ``(0,1), (2,3), ...`` carry the first color and ``(1,2), ..., (2k-1,0)``
    the second."""
    if s.n % 2 or s.n < 4:
        raise ValueError("a star needs an even number of at least 4 points")
    matchings = [c for c, g in color_decomposition(s) if _is_perfect_matching(g)]
    for a, b in combinations(matchings, 2):
        cyc = hamiltonian_cycle(merge_colors(s, (a, b)))
        if cyc is None:
            continue
        if s.color(cyc[0], cyc[1]) != a:
            cyc = cyc[1:] + cyc[:1]
        return RuleWitness("star", (a, b), cyc, f"matchings {a} and {b} alternate around C{s.n}")
    return None


def find_duplex(s: ColoredSpace) -> tuple[int, int, RuleWitness] | None:
    """Two colors, one of them ``m >= 2`` disjoint cliques of size ``s >= 2``."""
    if s.num_colors != 2:
        return None
    for c, g in color_decomposition(s):
        comps = g.components()
        size = len(comps[0])
        if len(comps) < 2 or size < 2 or any(len(b) != size for b in comps):
            continue
        if all(g.has_edge(u, v) for b in comps for u, v in combinations(b, 2)):
            other = 1 - c
            w = RuleWitness("duplex", (c, other), (), f"{len(comps)} blocks of {size} points",
                            tuple(tuple(b) for b in comps))
            return len(comps), size, w
    return None


def components_vt_check(s: ColoredSpace) -> RuleWitness | None:
    """``None`` when every color component is vertex-transitive."""
    if s.n > 7:
        raise ValueError("component homogeneity is only decisive for n <= 7")
    for c, g in color_decomposition(s):
        if not is_vertex_transitive(g):
            return RuleWitness("components_vt", (c,), (), f"color {c} is not vertex-transitive")
    return None


# -- witness re-validation --------------------------------------------------

def revalidate(s: ColoredSpace, w: RuleWitness) -> bool:
    """Re-check a witness against ``s`` from its recorded data alone."""
    try:
        return _REVALIDATORS[w.rule](s, w)
    except (IndexError, ValueError, KeyError):
        return False


def _cycle_edges(order) -> set:
    k = len(order)
    return {frozenset((order[i], order[(i + 1) % k])) for i in range(k)}


def _edge_set(g: Graph) -> set:
    return {frozenset(e) for e in g.edges}


def _rv_magic(s, w):
    (c,), (u, v) = w.colors, w.labeling
    g = component(s, c)
    return g.degrees()[u] != g.degrees()[v]


def _rv_bicycle(s, w):
    (c,) = w.colors
    a, b = w.blocks
    if len(a) == len(b) or sorted(a + b) != list(range(s.n)) or min(len(a), len(b)) < 3:
        return False
    return _edge_set(component(s, c)) == _cycle_edges(a) | _cycle_edges(b)


def _rv_cycle(s, w):
    order = w.labeling
    if sorted(order) != list(range(s.n)):
        return False
    return _edge_set(merge_colors(s, w.colors)) == _cycle_edges(order)


def _rv_star(s, w):
    a, b = w.colors
    order = w.labeling
    k = len(order)
    if k != s.n or k % 2 or sorted(order) != list(range(s.n)):
        return False
    ea = {frozenset((order[i], order[i + 1])) for i in range(0, k, 2)}
    eb = {frozenset((order[i], order[(i + 1) % k])) for i in range(1, k, 2)}
    return _edge_set(component(s, a)) == ea and _edge_set(component(s, b)) == eb


def _rv_duplex(s, w):
    inner, _ = w.colors
    if s.num_colors != 2:
        return False
    blocks = w.blocks
    sizes = {len(b) for b in blocks}
    if len(blocks) < 2 or len(sizes) != 1 or min(sizes) < 2:
        return False
    if sorted(p for b in blocks for p in b) != list(range(s.n)):
        return False
    want = {frozenset(e) for b in blocks for e in combinations(b, 2)}
    return _edge_set(component(s, inner)) == want


def _rv_components_vt(s, w):
    (c,) = w.colors
    return not is_vertex_transitive(component(s, c))


_REVALIDATORS = {
    "magic": _rv_magic,
    "bicycle": _rv_bicycle,
    "cycle": _rv_cycle,
    "star": _rv_star,
    "duplex": _rv_duplex,
    "components_vt": _rv_components_vt,
}
