"""The classification cascade, the census of small vertex-transitive
graphs, and surveys over all (or sampled) colorings of ``K_n``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator

import numpy as np

from . import rules
from .permgroup import PermutationGroup, automorphism_group, cycle_notation, is_vertex_transitive
from .rules import RuleWitness
from .space import (ColoredSpace, Graph, canonical_form, complement_graph, graph_canonical_form,
                    graph_from_key, is_simplex, space_from_key)


class Kind(str, Enum):
    NON_TRANSITIVE = "non_transitive"
    COMMUTATIVE = "commutative"
    TEMPERLEY_LIEB = "temperley_lieb"
    FUSS_CATALAN = "fuss_catalan"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    outcome: str
    witness: RuleWitness | None = None

    def to_json(self) -> dict:
        return {"rule": self.rule, "outcome": self.outcome,
                "witness": None if self.witness is None else self.witness.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> TraceStep:
        w = d.get("witness")
        return cls(d["rule"], d["outcome"], None if w is None else RuleWitness.from_json(w))


@dataclass(frozen=True)
class Classification:
    kind: Kind
    params: dict
    trace: tuple[TraceStep, ...]
    group: PermutationGroup | None = field(default=None, compare=False)

    def params_json(self) -> dict:
        return dict(self.params)


# outcome of a step that ends the cascade, and the kind it yields
_DECISIVE = {
    ("small_n", "applies"): Kind.COMMUTATIVE,
    ("simplex", "applies"): Kind.TEMPERLEY_LIEB,
    ("magic", "fail"): Kind.NON_TRANSITIVE,
    ("bicycle", "found"): Kind.NON_TRANSITIVE,
    ("components_vt", "fail"): Kind.NON_TRANSITIVE,
    ("duplex", "found"): Kind.FUSS_CATALAN,
    ("cycle", "found"): Kind.COMMUTATIVE,
    ("star", "found"): Kind.COMMUTATIVE,
}


def replay(trace) -> Kind:
    """Re-derive the kind from a trace; the last step decides."""
    for step in trace:
        kind = _DECISIVE.get((step.rule, step.outcome))
        if kind is not None:
            if step is not trace[-1]:
                raise ValueError(f"decisive step {step.rule} is not the last one")
            return kind
    return Kind.UNDETERMINED


def _group_params(G: PermutationGroup) -> dict:
    return {"order": G.order, "generators": [cycle_notation(g) for g in G.generators]}


def classify(s: ColoredSpace) -> Classification:
    """Run the rules in a fixed priority order; the first decisive one wins."""
    trace: list[TraceStep] = []

    def commutative(step):
        trace.append(step)
        G = automorphism_group(s)
        return Classification(Kind.COMMUTATIVE, _group_params(G), tuple(trace), G)

    def non_transitive(step):
        trace.append(step)
        return Classification(Kind.NON_TRANSITIVE, {"reason": step.witness.detail}, tuple(trace))

    n = s.n
    if n <= 3:
        return commutative(TraceStep("small_n", "applies"))
    trace.append(TraceStep("small_n", "skip"))

    if is_simplex(s):
        trace.append(TraceStep("simplex", "applies"))
        return Classification(Kind.TEMPERLEY_LIEB, {"n": n}, tuple(trace))
    trace.append(TraceStep("simplex", "no"))

    w = rules.magic_rule_check(s)
    if w is not None:
        return non_transitive(TraceStep("magic", "fail", w))
    trace.append(TraceStep("magic", "pass"))

    w = rules.find_unbalanced_bicycle(s)
    if w is not None:
        return non_transitive(TraceStep("bicycle", "found", w))
    trace.append(TraceStep("bicycle", "none"))

    if n <= 7:
        w = rules.components_vt_check(s)
        if w is not None:
            return non_transitive(TraceStep("components_vt", "fail", w))
        trace.append(TraceStep("components_vt", "pass"))
    else:
        trace.append(TraceStep("components_vt", "skip"))

    dup = rules.find_duplex(s)
    if dup is not None:
        m, size, w = dup
        trace.append(TraceStep("duplex", "found", w))
        return Classification(Kind.FUSS_CATALAN, {"m": m, "s": size}, tuple(trace))
    trace.append(TraceStep("duplex", "none"))

    if n >= 5:
        w = rules.find_hamiltonian_merge(s)
        if w is not None:
            return commutative(TraceStep("cycle", "found", w))
        trace.append(TraceStep("cycle", "none"))
    else:
        trace.append(TraceStep("cycle", "skip"))

    if n % 2 == 0:
        w = rules.find_star(s)
        if w is not None:
            return commutative(TraceStep("star", "found", w))
        trace.append(TraceStep("star", "none"))
    else:
        trace.append(TraceStep("star", "skip"))

    return Classification(Kind.UNDETERMINED, {"reason": "no rule applies"}, tuple(trace))


def replay_check(s: ColoredSpace, c: Classification) -> bool:
    """Trace replays to the reported kind and every witness re-validates."""
    if replay(c.trace) != c.kind:
        return False
    return all(step.witness is None or rules.revalidate(s, step.witness) for step in c.trace)


# -- vertex-transitive census -----------------------------------------------

def _regular_masks(n: int, chunk_bits: int = 22) -> Iterator[np.ndarray]:
    """Edge masks of all regular labeled graphs on ``n`` vertices; bit
    ``t`` of a mask is the ``t``-th pair of ``combinations(range(n), 2)``."""
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    total = 1 << m
    step = min(total, 1 << chunk_bits)
    inc = [[t for t, (i, j) in enumerate(pairs) if v in (i, j)] for v in range(n)]
    for lo in range(0, total, step):
        masks = np.arange(lo, lo + step, dtype=np.int64)
        deg0 = None
        keep = np.ones(step, dtype=bool)
        for v in range(n):
            d = np.zeros(step, dtype=np.int8)
            for t in inc[v]:
                d += ((masks >> t) & 1).astype(np.int8)
            if deg0 is None:
                deg0 = d
            else:
                keep &= d == deg0
        yield masks[keep]


def enumerate_vertex_transitive(max_n: int) -> dict[int, list[Graph]]:
    """Vertex-transitive graphs on ``1..max_n`` vertices up to isomorphism,
    each list sorted by (edge count, canonical key)."""
    if max_n > 8:
        raise ValueError("census limited to max_n <= 8")
    out = {}
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        half = len(pairs) / 2
        keys: dict[bytes, Graph] = {}
        for masks in _regular_masks(n):
            for mask in masks.tolist():
                if bin(mask).count("1") > half:
                    continue  # complements of the sparse half cover these
                g = Graph.from_edges(n, (pairs[t] for t in range(len(pairs)) if mask >> t & 1))
                if not is_vertex_transitive(g):
                    continue
                for h in (g, complement_graph(g)):
                    key = graph_canonical_form(h)
                    if key not in keys:
                        keys[key] = graph_from_key(key)
        out[n] = [keys[k] for k in sorted(keys, key=lambda k: (len(keys[k].edges), k))]
    return out


def graph_name(g: Graph) -> str:
    """Short descriptive name for the small graphs of the census."""
    n, e = g.n, len(g.edges)
    if e == 0:
        return f"empty({n})"
    if e == n * (n - 1) // 2:
        return f"K{n}"
    comps = g.components()
    sizes = {len(c) for c in comps}
    if len(sizes) == 1:
        k = sizes.pop()
        reps = len(comps)
        clique = all(g.has_edge(u, v) for c in comps for u, v in combinations(c, 2))
        if clique:
            return f"{reps}K{k}" if reps > 1 else f"K{k}"
        if rules.hamiltonian_cycle(g) is not None:
            return f"C{n}"
    co = complement_graph(g)
    if len(co.edges) < e:
        return f"co-({graph_name(co)})"
    return f"graph(n={n}, edges={e})"


# -- surveys ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _rgs_counts(length: int, blocks: int) -> int:
    """Restricted-growth completions of ``length`` more slots when
    ``blocks`` labels are already in use."""
    if length == 0:
        return 1
    return blocks * _rgs_counts(length - 1, blocks) + _rgs_counts(length - 1, blocks + 1)


def restricted_growth_strings(length: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of ``length`` slots, as restricted-growth strings."""
    if length == 0:
        yield ()
        return
    word = [0] * length

    def rec(i, top):
        if i == length:
            yield tuple(word)
            return
        for c in range(top + 2):
            word[i] = c
            yield from rec(i + 1, max(top, c))

    word[0] = 0
    yield from rec(1, 0)


def random_restricted_growth_string(length: int, rng: random.Random) -> tuple[int, ...]:
    """Uniform over all set partitions of ``length`` slots."""
    word, top = [], 0
    for i in range(length):
        rest = length - i - 1
        stay = top * _rgs_counts(rest, top)
        r = rng.randrange(stay + _rgs_counts(rest, top + 1))
        if r < stay:
            word.append(r // _rgs_counts(rest, top))
        else:
            word.append(top)
            top += 1
    return tuple(word)


@dataclass
class SurveyConfig:
    n: int
    exhaustive: bool = True
    samples: int = 0
    seed: int = 0


@dataclass
class SurveyRow:
    key: bytes
    classification: Classification
    draws: int = 1


@dataclass
class SurveyResult:
    config: SurveyConfig
    rows: list[SurveyRow]
    labeled: int

    def tally(self) -> dict[str, int]:
        t = {k.value: 0 for k in Kind}
        for r in self.rows:
            t[r.classification.kind.value] += 1
        return t

    def draw_tally(self) -> dict[str, int]:
        t = {k.value: 0 for k in Kind}
        for r in self.rows:
            t[r.classification.kind.value] += r.draws
        return t


def survey(cfg: SurveyConfig) -> SurveyResult:
    """Classify every isomorphism class met among the labeled colorings
    (all of them, or a seeded uniform sample of restricted-growth strings)."""
    n = cfg.n
    length = n * (n - 1) // 2
    if cfg.exhaustive:
        if n > 5:
            raise ValueError("exhaustive survey limited to n <= 5")
        words = restricted_growth_strings(length)
    else:
        if n > 7:
            raise ValueError("sampled survey limited to n <= 7")
        rng = random.Random(cfg.seed)
        words = (random_restricted_growth_string(length, rng) for _ in range(cfg.samples))
    seen: dict[bytes, SurveyRow] = {}
    labeled = 0
    for w in words:
        labeled += 1
        key = canonical_form(ColoredSpace.from_word(n, w)) if n > 1 else bytes([n])
        row = seen.get(key)
        if row is None:
            seen[key] = SurveyRow(key, classify(space_from_key(key)))
        else:
            row.draws += 1
    rows = [seen[k] for k in sorted(seen)]
    return SurveyResult(cfg, rows, labeled)


# -- homogeneous spaces -----------------------------------------------------

def homogeneous_spaces(n: int) -> list[ColoredSpace]:
    """Colored spaces on ``n <= 7`` points whose automorphism group is
    transitive, one per isomorphism class.

    Such a space has vertex-transitive color components, so it is a
    partition of ``K_n`` into labeled copies of census graphs; all of
    those partitions are enumerated and the transitive ones kept.
    """
    if n > 7:
        raise ValueError("n <= 7 required")
    if n == 1:
        return [ColoredSpace.simplex(1)]
    census = enumerate_vertex_transitive(n)[n]
    pairs = list(combinations(range(n), 2))
    pos = {p: t for t, p in enumerate(pairs)}
    labeled = set()
    for g in census:
        if not g.edges:
            continue
        for perm in permutations(range(n)):
            h = g.relabel(perm)
            labeled.add(sum(1 << pos[e] for e in h.edges))
    by_low: dict[int, list[int]] = {}
    for mask in labeled:
        low = (mask & -mask).bit_length() - 1
        by_low.setdefault(low, []).append(mask)
    for lst in by_low.values():
        lst.sort()
    full = (1 << len(pairs)) - 1
    found: dict[bytes, ColoredSpace] = {}

    def rec(covered, parts):
        if covered == full:
            word = [0] * len(pairs)
            for c, mask in enumerate(parts):
                for t in range(len(pairs)):
                    if mask >> t & 1:
                        word[t] = c
            s = ColoredSpace.from_word(n, word)
            key = canonical_form(s)
            if key not in found and automorphism_group(s).is_transitive():
                found[key] = space_from_key(key)
            return
        free = ~covered & full
        low = (free & -free).bit_length() - 1
        for mask in by_low.get(low, ()):
            if mask & covered == 0:
                rec(covered | mask, parts + [mask])

    rec(0, [])
    return [found[k] for k in sorted(found)]
