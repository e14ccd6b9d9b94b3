import pathlib

import pytest
from hypothesis import HealthCheck, settings

from orbitlp.cm_encode import parse_machine, run_from_steps
from orbitlp.corpus import CorpusConfig, corpus
from orbitlp.orbit_model import parse_system

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SYSTEMS = pathlib.Path(__file__).resolve().parent.parent / "systems"
MACHINES = pathlib.Path(__file__).resolve().parent.parent / "machines"


def load(name: str):
    return parse_system((SYSTEMS / f"{name}.orb").read_text())


@pytest.fixture(scope="session")
def random_systems():
    return corpus(CorpusConfig(seed=0, size=200))


def load_machine(path: pathlib.Path):
    """Machine plus the run recorded in its ``# run: c0=.. steps=..`` header."""
    text = path.read_text()
    fields = dict(f.split("=", 1) for f in text.splitlines()[0].removeprefix("# run:").split())
    c0 = [int(v) for v in fields["c0"].split(",")]
    steps = [int(v) for v in fields["steps"].split(",") if v]
    m = parse_machine(text)
    return m, run_from_steps(m, c0, steps)


def machine_corpus():
    return [(p.stem, *load_machine(p)) for p in sorted(MACHINES.glob("*.cm"))]
