"""Compare the reduced program P2(n) with brute-force instantiation over a seeded corpus.

For every system and every n in [lo, hi] (relative to 2d), the supremum of the finite LP over
n atoms must equal the maximum of P2(n). Rows below 2d are reported but never count as mismatches.
"""
import sys
import time
from collections import Counter
from dataclasses import dataclass

from _config import parse_config
from orbitlp.corpus import CorpusConfig, corpus
from orbitlp.instantiate import oracle_supremum
from orbitlp.orbit_model import MaxResult
from orbitlp.paramlp import almost_all_maximize, evaluate_at
from orbitlp.reduction import build_p2
from orbitlp.simplex import Status, maximize


@dataclass(frozen=True)
class Config:
    seed: int = 0
    size: int = 200
    max_dim: int = 2
    below: int = 0  # also check this many n values under 2d
    above: int = 3  # check 2d .. 2d + above


def as_max(r) -> MaxResult:
    if r.tag is Status.INFEASIBLE:
        return MaxResult.neg_inf()
    if r.tag is Status.UNBOUNDED:
        return MaxResult.pos_inf()
    return MaxResult.finite(r.value, True)


def main(cfg: Config) -> int:
    systems = corpus(CorpusConfig(seed=cfg.seed, size=cfg.size, max_dim=cfg.max_dim))
    verdicts, mismatches, informational = Counter(), 0, Counter()
    start = time.perf_counter()
    for idx, s in enumerate(systems):
        rp = build_p2(s)
        verdicts[almost_all_maximize(rp.system, rp.objective).tag.value] += 1
        for n in range(max(0, rp.n_floor - cfg.below), rp.n_floor + cfg.above + 1):
            same = oracle_supremum(s, n).same_value(as_max(maximize(evaluate_at(rp.system, n), rp.objective)))
            if n < rp.n_floor:
                band = "[d, 2d)" if n >= rp.dim_d else "n < d"
                informational[(band, "agree" if same else "differ")] += 1
            elif not same:
                mismatches += 1
                print(f"mismatch: system {idx}, n = {n}")
    print(f"systems: {len(systems)}; almost-all suprema: {dict(sorted(verdicts.items()))}")
    print(f"mismatches for n >= 2d: {mismatches}")
    if cfg.below:
        for (band, verdict), count in sorted(informational.items()):
            print(f"below 2d (informational), {band}: {verdict} {count}")
    print(f"time: {time.perf_counter() - start:.1f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main(parse_config(Config, __doc__)))
