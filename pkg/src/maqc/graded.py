"""Complexes whose basis is labelled by pairs (σ, J) with J ∩ I_α(σ) = ∅.

The cellular cochain models and the finite DGA share this basis, the
multidegree (−|J|, I_α(σ) ∪ J), and the splitting into L-pieces.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import InvariantError
from .homology import CochainComplex, CohomologyResult, Ring, assemble, cohomology, reduce_coeff
from .simplicial import ColoredComplex, bits, popcount, vertex_tuple


class CellLabel(NamedTuple):
    sigma: int
    J: int


Cochain = dict  # CellLabel -> int coefficient


def labels_of(cc: ColoredComplex) -> list[CellLabel]:
    """Every (σ, J) with σ ∈ K and J ⊆ [k] ∖ I_α(σ), in a fixed order."""
    out = []
    full = cc.all_blocks
    for s in cc.sorted_faces():
        free = full & ~cc.support(s)
        J = 0
        while True:
            out.append(CellLabel(s, J))
            if J == free:
                break
            J = (J - free) & free
    out.sort(key=lambda lab: (popcount(lab.J | cc.support(lab.sigma)), lab.J | cc.support(lab.sigma),
                              popcount(lab.sigma), vertex_tuple(lab.sigma), lab.J))
    return out


@dataclass(frozen=True)
class MultigradedComplex:
    cc: ColoredComplex
    ring: Ring
    labels: tuple[CellLabel, ...]
    dim: Mapping[CellLabel, int]
    boundary: Mapping[CellLabel, tuple[tuple[CellLabel, int], ...]]

    def part(self, lab: CellLabel) -> int:
        return self.cc.support(lab.sigma) | lab.J

    def mdeg(self, lab: CellLabel) -> tuple[int, int]:
        return -popcount(lab.J), self.part(lab)

    def d(self, vec: Mapping[CellLabel, int]) -> Cochain:
        out: dict = defaultdict(int)
        for lab, c in vec.items():
            for t, c2 in self.boundary[lab]:
                out[t] += c * c2
        return {t: reduce_coeff(c, self.ring) for t, c in out.items() if reduce_coeff(c, self.ring)}

    def check_grading(self) -> None:
        """d raises the dimension by one and keeps the L-component of mdeg."""
        for lab in self.labels:
            for t, _ in self.boundary[lab]:
                if self.part(t) != self.part(lab):
                    raise InvariantError(f"differential moves {lab} out of its L-piece")
                if self.dim[t] != self.dim[lab] + 1:
                    raise InvariantError(f"differential of {lab} does not raise dimension by one")

    def pieces(self) -> dict[int, list[CellLabel]]:
        out: dict[int, list[CellLabel]] = defaultdict(list)
        for lab in self.labels:
            out[self.part(lab)].append(lab)
        return dict(out)

    def complex(self, labels: Iterable[CellLabel] | None = None, ring: Ring | None = None) -> CochainComplex:
        labs = self.labels if labels is None else tuple(labels)
        return assemble(ring or self.ring, labs, self.dim.__getitem__, self.boundary.__getitem__)

    def split_multidegree(self) -> dict[int, CochainComplex]:
        self.check_grading()
        return {L: self.complex(labs) for L, labs in sorted(self.pieces().items())}

    def cohomology_by_part(self, ring: Ring | None = None) -> dict[int, CohomologyResult]:
        self.check_grading()
        ring = ring or self.ring
        return {L: cohomology(self.complex(labs, ring), ring) for L, labs in sorted(self.pieces().items())}

    def cohomology(self, ring: Ring | None = None) -> CohomologyResult:
        ring = ring or self.ring
        total = CohomologyResult(ring, {})
        for part in self.cohomology_by_part(ring).values():
            total = total + part
        return total

    def square_defect(self) -> list[CellLabel]:
        """Basis elements on which d∘d is nonzero."""
        return [lab for lab in self.labels if self.d(self.d({lab: 1}))]


def iter_blocks_added(cc: ColoredComplex, sigma: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(v, ω, block of v)`` over the one-vertex extensions of σ in K."""
    for v, omega in cc.cofaces(sigma):
        yield v, omega, cc.block_of[v]


def describe(cc: ColoredComplex, lab: CellLabel) -> str:
    verts = ",".join(cc.names[v] for v in bits(lab.sigma)) or "0"
    blocks = ",".join(str(i + 1) for i in bits(lab.J))
    return f"({verts}|{blocks})"
