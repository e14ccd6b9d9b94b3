"""Seeded random canonical systems for cross-checks and experiments."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .orbit_model import ColOrbit, OrbitSystem, RowOrbit, all_partial_injections


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 0
    size: int = 200
    max_rows: int = 3
    max_cols: int = 3
    max_dim: int = 2
    coef_bound: int = 3
    density: float = 0.4  # chance that a given (row, column, injection) entry is nonzero


def random_system(rng: random.Random, cfg: CorpusConfig) -> OrbitSystem:
    rows = tuple(
        RowOrbit(rng.randint(0, cfg.max_dim), target=rng.randint(-cfg.coef_bound, cfg.coef_bound))
        for _ in range(rng.randint(1, cfg.max_rows))
    )
    cols = tuple(
        ColOrbit(rng.randint(0, cfg.max_dim), objective=rng.randint(-cfg.coef_bound, cfg.coef_bound))
        for _ in range(rng.randint(1, cfg.max_cols))
    )
    return _fill(rng, rows, cols, cfg)


def _fill(rng: random.Random, rows, cols, cfg: CorpusConfig) -> OrbitSystem:
    coefs = {}
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            for inj in all_partial_injections(r.dim, c.dim):
                if rng.random() < cfg.density:
                    coefs[(i, j, inj)] = rng.choice([v for v in range(-cfg.coef_bound, cfg.coef_bound + 1) if v])
    return OrbitSystem(rows, cols, coefs)


def corpus(cfg: CorpusConfig = CorpusConfig()) -> list[OrbitSystem]:
    rng = random.Random(cfg.seed)
    return [random_system(rng, cfg) for _ in range(cfg.size)]


def sized_system(rng: random.Random, rows: int, cols: int, dim: int, cfg: CorpusConfig = CorpusConfig()) -> OrbitSystem:
    """Every orbit has dimension ``dim``; used for scaling in the number of orbits."""
    b = cfg.coef_bound
    rs = tuple(RowOrbit(dim, target=rng.randint(-b, b)) for _ in range(rows))
    cs = tuple(ColOrbit(dim, objective=rng.randint(-b, b)) for _ in range(cols))
    return _fill(rng, rs, cs, cfg)
