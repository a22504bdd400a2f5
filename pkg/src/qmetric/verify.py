"""Exact checks of the matrix identities behind the classification.

In the commutative case a coaction is a group action, and its coefficient
matrix has entries that are projections of ``C(G)``, i.e. subsets of
``G``. That makes the magic-biunitary and metric-commutation conditions
decidable with finite set operations. The spectral checks at the end are
the only floating-point code in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .classifier import homogeneous_spaces
from .permgroup import Permutation, PermutationGroup, automorphism_group, compose, symmetric_group
from .space import ColoredSpace, build_simplex_product, canonical_form, color_decomposition

CIRCULANT_TOL = 1e-12
SPECTRAL_TOL = 1e-9
CLUSTER_GAP = 1e-6


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    detail: str = ""
    residual: float = 0.0

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FiniteGroup:
    """Abstract finite group: element labels ``0..order-1`` and a
    multiplication table ``table[g][h] = g*h``."""

    table: tuple[tuple[int, ...], ...]

    @classmethod
    def from_permutations(cls, elements: Sequence[Permutation]) -> FiniteGroup:
        idx = {p: i for i, p in enumerate(elements)}
        return cls(tuple(tuple(idx[compose(g, h)] for h in elements) for g in elements))

    @property
    def order(self) -> int:
        return len(self.table)


@dataclass(frozen=True)
class SubsetMatrix:
    group: FiniteGroup
    entries: tuple[tuple[frozenset[int], ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)


def _is_homomorphism(group: FiniteGroup, action: Sequence[Permutation]) -> bool:
    return all(action[group.table[g][h]] == compose(action[g], action[h])
               for g in range(group.order) for h in range(group.order))


def action_magic_matrix(group: FiniteGroup, action: Sequence[Permutation]) -> SubsetMatrix:
    """Entry ``(j, i)`` is ``{g : g.i = j}``."""
    if len(action) != group.order:
        raise ValueError("need one permutation per group element")
    if not _is_homomorphism(group, action):
        raise ValueError("action is not a group homomorphism")
    n = len(action[0])
    cells = [[set() for _ in range(n)] for _ in range(n)]
    for g, p in enumerate(action):
        for i in range(n):
            cells[p[i]][i].add(g)
    return SubsetMatrix(group, tuple(tuple(frozenset(c) for c in row) for row in cells))


def natural_magic_matrix(G: PermutationGroup) -> SubsetMatrix:
    """Magic matrix of a permutation group acting on its points."""
    return action_magic_matrix(FiniteGroup.from_permutations(G.elements), G.elements)


def verify_magic_biunitary(v: SubsetMatrix) -> CheckResult:
    """Every row and column partitions the group."""
    whole = frozenset(range(v.group.order))
    n = v.size
    lines = [("row", i, [v.entries[i][j] for j in range(n)]) for i in range(n)]
    lines += [("column", j, [v.entries[i][j] for i in range(n)]) for j in range(n)]
    for kind, i, cells in lines:
        for a in range(n):
            for b in range(a + 1, n):
                common = cells[a] & cells[b]
                if common:
                    return CheckResult(False, f"{kind} {i}: cells {a} and {b} share elements {sorted(common)}")
        union = frozenset().union(*cells)
        if union != whole:
            return CheckResult(False, f"{kind} {i}: missing elements {sorted(whole - union)}")
    return CheckResult(True)


def verify_metric_commutation(v: SubsetMatrix, s: ColoredSpace) -> CheckResult:
    """``dv = vd`` read entrywise as functions on the group:
    ``(dv)_ij(g) = d(i, g.j)`` and ``(vd)_ij(g) = d(g^-1.i, j)``."""
    n = v.size
    if n != s.n:
        raise ValueError(f"matrix is {n} x {n} but the space has {s.n} points")

    def d(i, j):
        if s.values is not None:
            return s.distance(i, j)
        return -1 if i == j else s.color(i, j)

    for g in range(v.group.order):
        for i in range(n):
            for j in range(n):
                dv = sum((d(i, k) for k in range(n) if g in v.entries[k][j]), start=0)
                vd = sum((d(k, j) for k in range(n) if g in v.entries[i][k]), start=0)
                if dv != vd:
                    return CheckResult(False, f"element {g}, entry ({i}, {j}): "
                                              f"(dv) = {dv} but (vd) = {vd}")
    return CheckResult(True)


def _mat(rows) -> np.ndarray:
    return np.array(rows, dtype=object)


def duplex_operators(m: int, s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All-ones matrix, block-averaging projection, identity (exact)."""
    N = m * s
    ones = _mat([[Fraction(1)] * N for _ in range(N)])
    e = _mat([[Fraction(1, s) if i // s == j // s else Fraction(0) for j in range(N)] for i in range(N)])
    ident = _mat([[Fraction(int(i == j)) for j in range(N)] for i in range(N)])
    return ones, e, ident


def verify_duplex_identity(m: int, s: int, A, a) -> CheckResult:
    """``d = A*I + (a - A)*s*e - a*1`` entrywise, plus ``e^2 = e = e^T``."""
    A, a = Fraction(A), Fraction(a)
    space = build_simplex_product(m, s, A, a)
    N = m * s
    d = _mat([[space.distance(i, j) for j in range(N)] for i in range(N)])
    ones, e, ident = duplex_operators(m, s)
    rhs = A * ones + (a - A) * s * e - a * ident
    if not (d == rhs).all():
        i, j = map(int, np.argwhere(d != rhs)[0])
        return CheckResult(False, f"entry ({i}, {j}): d = {d[i, j]} but formula gives {rhs[i, j]}")
    if not (e.dot(e) == e).all():
        return CheckResult(False, "e is not idempotent")
    if not (e.T == e).all():
        return CheckResult(False, "e is not self-adjoint")
    if sum(e[i, i] for i in range(N)) != m:
        return CheckResult(False, "trace of e differs from the block count")
    return CheckResult(True)


def cycle_adjacency(n: int) -> np.ndarray:
    M = np.zeros((n, n))
    for i in range(n):
        M[i, (i + 1) % n] = M[(i + 1) % n, i] = 1
    return M


def circulant_eigencheck(n: int) -> CheckResult:
    """Each ``f_w = (1, w, ..., w^(n-1))`` is an eigenvector of the n-cycle
    with eigenvalue ``w + w^(n-1)``, and for primitive ``w`` the powers
    ``f^0..f^(n-1)`` form a basis."""
    if n < 3:
        raise ValueError("cycles need at least 3 points")
    M = cycle_adjacency(n)
    powers = np.arange(n)
    worst = 0.0
    for r in range(n):
        w = np.exp(2j * np.pi * r / n)
        f = w ** powers
        lam = w + w ** (n - 1)
        worst = max(worst, float(np.max(np.abs(M @ f - lam * f))))
    w = np.exp(2j * np.pi / n)
    F = np.array([(w ** powers) ** k for k in range(n)]).T
    # columns of F are orthogonal of norm^2 n exactly when they form a basis of this kind
    basis_err = float(np.max(np.abs(F.conj().T @ F - n * np.eye(n)))) / n
    worst = max(worst, basis_err)
    ok = worst <= CIRCULANT_TOL
    return CheckResult(ok, "" if ok else f"max residual {worst:.3e}", worst)


def eigenspace_projections(A: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Spectral projections of a symmetric matrix, clustering eigenvalues
    closer than ``CLUSTER_GAP``."""
    vals, vecs = np.linalg.eigh(A)
    groups: list[list[int]] = []
    for i, v in enumerate(vals):
        if groups and v - vals[groups[-1][-1]] < CLUSTER_GAP:
            groups[-1].append(i)
        else:
            groups.append([i])
    out = []
    for g in groups:
        V = vecs[:, g]
        out.append((float(np.mean(vals[g])), V @ V.T))
    return out


def permutation_matrix(p: Permutation) -> np.ndarray:
    n = len(p)
    P = np.zeros((n, n))
    P[list(p), range(n)] = 1
    return P


def eigenspace_invariance_check(s: ColoredSpace, group: PermutationGroup | None = None) -> CheckResult:
    """Every eigenspace projection of every color component commutes with
    every classical automorphism."""
    if s.n > 9:
        raise ValueError("n <= 9 required")
    G = group if group is not None else automorphism_group(s)
    perms = [permutation_matrix(g) for g in G.elements]
    worst = 0.0
    for c, g in color_decomposition(s):
        A = np.zeros((s.n, s.n))
        for i, j in g.edges:
            A[i, j] = A[j, i] = 1
        projs = eigenspace_projections(A)
        total = sum(P for _, P in projs)
        worst = max(worst, float(np.max(np.abs(total - np.eye(s.n)))))
        for lam, P in projs:
            for Pi in perms:
                r = float(np.max(np.abs(P @ Pi - Pi @ P)))
                if r > worst:
                    worst = r
                if r > SPECTRAL_TOL:
                    return CheckResult(False, f"color {c}, eigenvalue {lam:.6f}: residual {r:.3e}", r)
    ok = worst <= SPECTRAL_TOL
    return CheckResult(ok, "" if ok else f"residual {worst:.3e}", worst)


def recover_components_by_powers(s: ColoredSpace) -> list[np.ndarray]:
    """Color components from the entrywise powers ``d^(k) = sum a^k d_a``,
    ``k = 1..#colors``, by exact Vandermonde inversion."""
    if s.values is None:
        raise ValueError("numeric distances required")
    c = s.num_colors
    vals = list(s.values)
    N = s.n
    powered = [_mat([[s.distance(i, j) ** k for j in range(N)] for i in range(N)]) for k in range(1, c + 1)]
    # V[k][a] = vals[a]^(k+1); solve V x = powered entrywise
    V = [[v ** (k + 1) for v in vals] for k in range(c)]
    Vinv = _exact_inverse(V)
    comps = []
    for a in range(c):
        comps.append(sum((Vinv[a][k] * powered[k] for k in range(c)), start=_mat([[Fraction(0)] * N] * N)))
    return comps


def _exact_inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def is_isometry(p: Permutation, s: ColoredSpace) -> bool:
    return all(s.color(p[i], p[j]) == s.color(i, j) for i in range(s.n) for j in range(i + 1, s.n))


__all__ = [
    "CheckResult", "FiniteGroup", "SubsetMatrix", "action_magic_matrix", "natural_magic_matrix",
    "verify_magic_biunitary", "verify_metric_commutation", "verify_duplex_identity",
    "circulant_eigencheck", "eigenspace_invariance_check", "eigenspace_projections",
    "recover_components_by_powers", "is_isometry", "group_corpus", "space_corpus", "run_suite", "SUITES",
]


# -- corpus and suites ------------------------------------------------------

def _cyclic(n: int) -> PermutationGroup:
    return PermutationGroup.generated_by(n, [tuple((i + 1) % n for i in range(n))])


def _dihedral(n: int) -> PermutationGroup:
    return PermutationGroup.generated_by(n, [tuple((i + 1) % n for i in range(n)),
                                             tuple((-i) % n for i in range(n))])


def _regular(G: PermutationGroup) -> PermutationGroup:
    """Left-regular action of ``G`` on its own elements."""
    els = list(G.elements)
    idx = {p: i for i, p in enumerate(els)}
    return PermutationGroup.generated_by(len(els), [tuple(idx[compose(g, h)] for h in els) for g in G.generators])


def _on_pairs(G: PermutationGroup) -> PermutationGroup:
    """Induced action on 2-subsets."""
    pairs = [frozenset(p) for p in combinations(range(G.n), 2)]
    idx = {p: i for i, p in enumerate(pairs)}
    return PermutationGroup.generated_by(
        len(pairs), [tuple(idx[frozenset(g[x] for x in p)] for p in pairs) for g in G.generators])


def group_corpus() -> list[tuple[str, PermutationGroup]]:
    """Transitive permutation groups of order at most 24 on at most 6 points."""
    out = [("trivial on 1", symmetric_group(1))]
    for n in range(2, 7):
        out.append((f"C{n}", _cyclic(n)))
    for n in range(3, 7):
        out.append((f"D{n}", _dihedral(n)))
    S3, S4 = symmetric_group(3), symmetric_group(4)
    A4 = PermutationGroup.generated_by(4, [(1, 2, 0, 3), (0, 2, 3, 1)])
    V4 = PermutationGroup.generated_by(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    out += [("S3", S3), ("V4", V4), ("A4", A4), ("S4", S4),
            ("S3 regular", _regular(S3)), ("A4 on pairs", _on_pairs(A4)), ("S4 on pairs", _on_pairs(S4))]
    for n in range(2, 7):
        for s in homogeneous_spaces(n):
            G = automorphism_group(s)
            if G.order <= 24:
                out.append((f"Aut of {_space_label(s)}", G))
    return out


def _space_label(s: ColoredSpace) -> str:
    return f"n={s.n} {canonical_form(s).hex()}"


def space_corpus(max_n: int = 6) -> list[ColoredSpace]:
    """Homogeneous spaces up to ``max_n`` points plus a few inhomogeneous ones."""
    out = [s for n in range(2, max_n + 1) for s in homogeneous_spaces(n)]
    out += [
        ColoredSpace.from_distances([[0, 1, 2], [1, 0, 1], [2, 1, 0]]),
        ColoredSpace.from_distances([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]),
        ColoredSpace.from_distances([[0, 1, 1, 2], [1, 0, 2, 1], [1, 2, 0, 2], [2, 1, 2, 0]]),
    ]
    return out


SUITES = ("magic", "commutation", "duplex", "circulant", "eigenspace")


def run_suite(name: str) -> list[tuple[str, CheckResult]]:
    """Run one named verification suite; one labelled result per case."""
    if name == "magic":
        return [(label, verify_magic_biunitary(natural_magic_matrix(G))) for label, G in group_corpus()]
    if name == "commutation":
        return list(_commutation_cases())
    if name == "duplex":
        grid = [(A, a) for A in (Fraction(1), Fraction(2), Fraction(5, 2))
                for a in (Fraction(1), Fraction(3, 2), Fraction(3), Fraction(4))
                if A != a and 2 * A >= a]
        return [(f"m={m} s={s} A={A} a={a}", verify_duplex_identity(m, s, A, a))
                for m in (2, 3) for s in (2, 3) for A, a in grid]
    if name == "circulant":
        return [(f"C{n}", circulant_eigencheck(n)) for n in range(3, 13)]
    if name == "eigenspace":
        return [(_space_label(s), eigenspace_invariance_check(s)) for s in space_corpus(6)]
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def _commutation_cases():
    """``verify_metric_commutation`` must agree with membership of every
    group element in the automorphism group."""
    groups = group_corpus()
    for s in space_corpus(6):
        aut = automorphism_group(s)
        for label, G in groups:
            if G.n != s.n:
                continue
            v = natural_magic_matrix(G)
            got = bool(verify_metric_commutation(v, s))
            want = all(g in aut for g in G.elements)
            res = CheckResult(got == want, "" if got == want else
                              f"commutation says {got}, automorphism membership says {want}")
            yield f"{label} on {_space_label(s)} ({'isometric' if want else 'not isometric'})", res
