"""Class tallies of the classification over every (or a sample of the)
colored spaces on n points, for a range of n."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from qmetric.classifier import Kind, SurveyConfig, survey


@dataclass
class TableConfig:
    exhaustive_max: int = 5
    sampled: tuple[int, ...] = (6, 7)
    samples: int = 10000
    seed: int = 1


def main(cfg: TableConfig) -> None:
    kinds = [k.value for k in Kind]
    print(f"{'n':>2} {'mode':>10} {'labeled':>8} {'classes':>8}  " + "  ".join(f"{k:>14}" for k in kinds))
    runs = [SurveyConfig(n, exhaustive=True) for n in range(1, cfg.exhaustive_max + 1)]
    runs += [SurveyConfig(n, exhaustive=False, samples=cfg.samples, seed=cfg.seed) for n in cfg.sampled]
    for sc in runs:
        t0 = time.perf_counter()
        r = survey(sc)
        tally = r.tally()
        mode = "exhaustive" if sc.exhaustive else "sample"
        print(f"{sc.n:>2} {mode:>10} {r.labeled:>8} {len(r.rows):>8}  "
              + "  ".join(f"{tally[k]:>14}" for k in kinds)
              + f"   ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--exhaustive-max", type=int, default=5)
    p.add_argument("--sampled", type=int, nargs="*", default=[6, 7])
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    a = p.parse_args()
    main(TableConfig(a.exhaustive_max, tuple(a.sampled), a.samples, a.seed))
