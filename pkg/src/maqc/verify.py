"""Randomized agreement sweep between the Hochster, cellular and DGA routes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cellular import build_cochain
from .dga import build_R
from .hochster import hochster, model_dims
from .homology import Ring
from .simplicial import ColoredComplex, complex_from_facets

RINGS = (Ring.Z2, Ring.Q, Ring.Z)


def random_instance(rng: random.Random, max_vertices: int) -> ColoredComplex:
    """Random facets on up to ``max_vertices`` vertices and a random block assignment.

    Degenerate partitions are kept on purpose.  Vertices that land in no facet
    stay as ghost vertices.
    """
    m = rng.randint(max(1, (max_vertices + 1) // 2), max_vertices)
    names = [f"v{i + 1}" for i in range(m)]
    facets = []
    for _ in range(rng.randint(1, m + 2)):
        size = rng.randint(1, min(m, 4))
        facets.append(sorted(rng.sample(names, size), key=names.index))
    k = rng.randint(1, m)
    assign = [rng.randrange(k) for _ in names]
    blocks: dict[int, list[str]] = {}
    for v, b in zip(names, assign):
        blocks.setdefault(b, []).append(v)
    return complex_from_facets(names, facets, list(blocks.values()))


@dataclass
class InstanceCheck:
    index: int
    complex: ColoredComplex
    agreements: dict[str, bool] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)


def check_instance(cc: ColoredComplex, index: int = 0) -> InstanceCheck:
    """Compare the routes on one complex; one agreement flag per coefficient ring."""
    out = InstanceCheck(index, cc)
    for ring in RINGS:
        ok = True
        for model in ("real", "torus"):
            h = hochster(cc, model, ring).totals()
            cell = build_cochain(cc, model, ring).cohomology().groups
            if h != dict(cell):
                ok = False
                out.details.append(f"{ring.value}/{model}: hochster {_fmt(h)} vs cellular {_fmt(cell)}")
            if ring is Ring.Z2:
                dga = build_R(cc, Ring.Z2, model_dims(cc, model)).cohomology().groups
                if h != dict(dga):
                    ok = False
                    out.details.append(f"z2/{model}: hochster {_fmt(h)} vs dga {_fmt(dga)}")
        out.agreements[ring.value] = ok
    return out


def _fmt(groups) -> str:
    return "{" + ", ".join(f"{q}: {g}" for q, g in sorted(groups.items())) + "}"


@dataclass
class SweepResult:
    seed: int
    trials: int
    max_vertices: int
    checks: list[InstanceCheck]

    @property
    def agreed(self) -> int:
        return sum(v for c in self.checks for v in c.agreements.values())

    @property
    def total(self) -> int:
        return sum(len(c.agreements) for c in self.checks)

    def summary(self) -> str:
        return f"{self.agreed}/{self.total} route agreements"

    def failures(self) -> list[InstanceCheck]:
        return [c for c in self.checks if not all(c.agreements.values())]


def run_sweep(seed: int, trials: int, max_vertices: int) -> SweepResult:
    rng = random.Random(seed)
    checks = [check_instance(random_instance(rng, max_vertices), n) for n in range(trials)]
    return SweepResult(seed, trials, max_vertices, checks)
