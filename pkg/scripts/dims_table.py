"""Gram ranks of TL and FC diagram spaces next to classical orbit counts."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from qmetric.diagrams import FC, TL, quantum_vs_classical
from qmetric.permgroup import automorphism_group, orbit_count_on_tuples, symmetric_group
from qmetric.space import build_simplex_product


@dataclass
class DimsConfig:
    tl: tuple[int, ...] = (2, 3, 4, 5, 6, 7)
    fc: tuple[tuple[int, int], ...] = field(default=((2, 2), (2, 3), (3, 2)))
    tl_max_k: int = 5
    fc_max_k: int = 4


def table(family, group, max_k):
    rows = quantum_vs_classical(family, [orbit_count_on_tuples(group, k) for k in range(max_k + 1)])
    print(f"{family}: order {group.order} classical group")
    print("   k  diagrams  rank  classical  gap")
    for r in rows:
        print(f"  {r.k:>2}  {r.diagrams:>8}  {r.rank:>4}  {r.classical:>9}  {r.gap:>3}")


def main(cfg: DimsConfig) -> None:
    for n in cfg.tl:
        table(TL(n), symmetric_group(n), cfg.tl_max_k)
    for m, s in cfg.fc:
        table(FC(m, s), automorphism_group(build_simplex_product(m, s, 2, 1)), cfg.fc_max_k)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--tl", type=int, nargs="*", default=[2, 3, 4, 5, 6, 7])
    p.add_argument("--tl-max-k", type=int, default=5)
    p.add_argument("--fc-max-k", type=int, default=4)
    a = p.parse_args()
    main(DimsConfig(tl=tuple(a.tl), tl_max_k=a.tl_max_k, fc_max_k=a.fc_max_k))
