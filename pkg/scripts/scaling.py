"""Time the decision pipeline as the number of orbits grows, and as the atom dimension grows.

The orbit sweep fixes the atom dimension; the dimension sweep fixes the orbit count and shows
how fast the reduced program itself grows with d.
"""
import math
import random
import statistics
import time
from dataclasses import dataclass

from _config import parse_config
from orbitlp.corpus import CorpusConfig, sized_system
from orbitlp.paramlp import almost_all_solve
from orbitlp.reduction import build_p2


@dataclass(frozen=True)
class Config:
    dim: int = 2
    max_orbits: int = 20
    step: int = 2
    seeds: int = 3
    repeats: int = 3
    dim_sweep_orbits: int = 4
    max_dim_sweep: int = 4
    density: float = 0.4


def timed(s) -> tuple[float, int]:
    best = math.inf
    for _ in range(CFG.repeats):
        t = time.perf_counter()
        rp = build_p2(s)
        almost_all_solve(rp.system)
        best = min(best, time.perf_counter() - t)
    return best, len(rp.system.inequalities)


def sweep(label: str, points, shape):
    xs, ys = [], []
    print(f"{label:>8} {'rows of P2':>10} {'median s':>10}")
    for x in points:
        runs = [timed(sized_system(random.Random(1000 * x + seed), *shape(x), CorpusConfig(density=CFG.density)))
                for seed in range(CFG.seeds)]
        t = statistics.median(r[0] for r in runs)
        print(f"{x:>8} {statistics.median(r[1] for r in runs):>10} {t:>10.4f}")
        xs.append(x)
        ys.append(t)
    return xs, ys


if __name__ == "__main__":
    CFG = parse_config(Config, __doc__)
    xs, ys = sweep("orbits", range(2, CFG.max_orbits + 1, CFG.step), lambda m: (m // 2, m - m // 2, CFG.dim))
    slope = statistics.linear_regression([math.log(x) for x in xs], [math.log(y) for y in ys]).slope
    print(f"log-log slope in the number of orbits at dimension {CFG.dim}: {slope:.2f}\n")
    k = CFG.dim_sweep_orbits
    sweep("dim", range(0, CFG.max_dim_sweep + 1), lambda d: (k // 2, k - k // 2, d))
