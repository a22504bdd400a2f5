"""Census of vertex-transitive graphs with timings per n."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from qmetric.classifier import enumerate_vertex_transitive, graph_name


@dataclass
class CensusConfig:
    max_n: int = 7
    out: str | None = None


def main(cfg: CensusConfig) -> dict:
    t0 = time.perf_counter()
    census = enumerate_vertex_transitive(cfg.max_n)
    elapsed = time.perf_counter() - t0
    result = {
        "config": asdict(cfg),
        "seconds": round(elapsed, 2),
        "counts": {n: len(gs) for n, gs in census.items()},
        "graphs": {n: [graph_name(g) for g in gs] for n, gs in census.items()},
    }
    for n, gs in census.items():
        print(f"{n:>2} {len(gs):>3}  {', '.join(graph_name(g) for g in gs)}")
    print(f"total {sum(result['counts'].values())} in {elapsed:.1f}s")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2)
    return result


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--out")
    a = p.parse_args()
    main(CensusConfig(a.max_n, a.out))
