from __future__ import annotations

from dataclasses import replace
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from qmetric import rules
from qmetric.rules import (RuleWitness, components_vt_check, find_duplex, find_hamiltonian_merge,
                           find_star, find_unbalanced_bicycle, magic_rule_check, revalidate)
from qmetric.space import ColoredSpace, Graph, component, space_from_key

from conftest import colored_spaces, cycle_space, exhaustive_survey, sq_product


def graph_space(n, edges):
    g = Graph(n, frozenset(edges))
    return ColoredSpace.from_graph(g)


C3_C4 = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)]


def test_magic_rule(square, rectangle):
    assert magic_rule_check(square) is None
    assert magic_rule_check(rectangle) is None
    path = graph_space(4, [(0, 1), (1, 2), (2, 3)])
    w = magic_rule_check(path)
    assert w is not None and revalidate(path, w)


def test_unbalanced_bicycle():
    s = graph_space(7, C3_C4)
    w = find_unbalanced_bicycle(s)
    assert w is not None
    assert sorted(len(b) for b in w.blocks) == [3, 4]
    assert revalidate(s, w)
    # balanced C3 + C3 is not a witness
    assert find_unbalanced_bicycle(graph_space(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])) is None


def test_cycle_rule():
    pent = cycle_space(5)
    w = find_hamiltonian_merge(pent)
    assert w is not None and len(w.colors) == 1 and revalidate(pent, w)
    with pytest.raises(ValueError):
        find_hamiltonian_merge(ColoredSpace.simplex(4))
    assert find_hamiltonian_merge(ColoredSpace.simplex(5)) is None


def test_cycle_rule_merges_two_matchings():
    # 3K2 + 3K2 + the rest: merging the two matchings gives C6
    m1 = {(0, 1), (2, 3), (4, 5)}
    m2 = {(1, 2), (3, 4), (0, 5)}
    s = ColoredSpace.from_coloring(6, lambda i, j: 0 if (i, j) in m1 else 1 if (i, j) in m2 else 2)
    w = find_hamiltonian_merge(s)
    assert w is not None and revalidate(s, w)
    assert set(w.colors) == {s.color(0, 1), s.color(1, 2)}


def test_star_on_rectangle(rectangle):
    w = find_star(rectangle)
    assert w is not None and revalidate(rectangle, w)
    a, b = w.colors
    order = w.labeling
    k = len(order)
    # alternation: even positions carry a, odd positions carry b
    for i in range(k):
        want = a if i % 2 == 0 else b
        assert rectangle.color(order[i], order[(i + 1) % k]) == want
    with pytest.raises(ValueError):
        find_star(cycle_space(5))


def test_duplex(square):
    m, s, w = find_duplex(square)
    assert (m, s) == (2, 2) and revalidate(square, w)
    assert find_duplex(sq_product(3, 2))[:2] == (3, 2)
    assert find_duplex(sq_product(2, 3))[:2] == (2, 3)
    assert find_duplex(cycle_space(5)) is None


def test_components_vt(square):
    assert components_vt_check(square) is None
    with pytest.raises(ValueError):
        components_vt_check(ColoredSpace.simplex(8))


def test_witness_json_roundtrip(rectangle):
    w = find_star(rectangle)
    assert RuleWitness.from_json(w.to_json()) == w


def test_tampered_witnesses_fail(rectangle):
    w = find_star(rectangle)
    bad = replace(w, labeling=w.labeling[1:] + w.labeling[:1])
    assert not revalidate(rectangle, bad)
    assert not revalidate(rectangle, replace(w, labeling=(0, 1)))
    assert not revalidate(rectangle, replace(w, rule="nonsense"))
    s = graph_space(7, C3_C4)
    bw = find_unbalanced_bicycle(s)
    assert not revalidate(s, replace(bw, blocks=(bw.blocks[0][:2], bw.blocks[1])))


DETECTORS = {
    "magic": magic_rule_check,
    "bicycle": find_unbalanced_bicycle,
    "duplex": find_duplex,
    "components_vt": components_vt_check,
    "cycle": lambda s: find_hamiltonian_merge(s) if s.n >= 5 else None,
    "star": lambda s: find_star(s) if s.n % 2 == 0 and s.n >= 4 else None,
}


def _outcomes(s):
    return {name: f(s) is None for name, f in DETECTORS.items()}


@pytest.mark.parametrize("n", [4, 5])
def test_detectors_isomorphism_invariant_exhaustive(n):
    for row in exhaustive_survey(n).rows:
        s = space_from_key(row.key)
        base = _outcomes(s)
        for p in permutations(range(n)):
            assert _outcomes(s.relabel(p)) == base


@pytest.mark.parametrize("n", [4, 5])
def test_every_survey_witness_revalidates(n):
    count = 0
    for row in exhaustive_survey(n).rows:
        s = space_from_key(row.key)
        for name, f in DETECTORS.items():
            out = f(s)
            w = out[2] if isinstance(out, tuple) else out
            if w is not None:
                assert revalidate(s, w), (name, row.key.hex())
                count += 1
    assert count > 0


@settings(max_examples=100, deadline=None)
@given(colored_spaces(min_n=4, max_n=7, max_colors=4))
def test_rule_implications(s):
    vt_ok = components_vt_check(s) is None
    if vt_ok:
        assert magic_rule_check(s) is None
    w = find_unbalanced_bicycle(s)
    if w is not None:
        assert not rules.is_vertex_transitive(component(s, w.colors[0]))
