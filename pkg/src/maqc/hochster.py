"""Multigraded cohomology tables as sums over the restricted subcomplexes K_{α,L}.

For each block subset L the table entry in degree q is a shifted reduced
cohomology group of K_{α,L}:

* real model:    H̃^{q-1}(K_{α,L})
* torus model:   H̃^{q-|L|-1}(K_{α,L})
* sphere model:  H̃^{q-1-Σ_{i∈L} d_i}(K_{α,L})
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import ValidationError
from .homology import ZERO, CohomologyResult, Group, Ring, reduced_cohomology_of_faces
from .simplicial import ColoredComplex, bits, restricted_faces, subsets_by_size


def model_dims(cc: ColoredComplex, model: str, dims: Sequence[int] | None = None) -> tuple[int, ...]:
    """Sphere dimensions realizing a model: real is all 0, torus all 1."""
    if model == "real":
        return (0,) * cc.k
    if model == "torus":
        return (1,) * cc.k
    if model == "spheres":
        if dims is None or len(dims) != cc.k:
            got = "none" if dims is None else len(dims)
            raise ValidationError(f"spheres model needs {cc.k} dimensions, got {got}")
        if any(d < 0 for d in dims):
            raise ValidationError("sphere dimensions must be non-negative")
        return tuple(int(d) for d in dims)
    raise ValidationError(f"unknown model {model!r} (use real, torus or spheres)")


def shift_for(L: int, dims: Sequence[int]) -> int:
    """Degree of the table that H̃^{-1}(K_{α,L}) lands in, minus one."""
    return 1 + sum(dims[i] for i in bits(L))


@dataclass(frozen=True)
class MultidegreeTable:
    """Entries keyed by (degree, L); zero entries are simply absent."""

    model: str
    ring: Ring
    dims: tuple[int, ...]
    entries: Mapping[tuple[int, int], Group] = field(default_factory=dict)

    def totals(self) -> dict[int, Group]:
        out: dict[int, Group] = {}
        for (q, _), g in self.entries.items():
            out[q] = out.get(q, ZERO) + g
        return dict(sorted(out.items()))

    def total_ranks(self) -> tuple[int, ...]:
        """Dense tuple of free ranks from degree 0 to the top nonzero degree."""
        tot = self.totals()
        if not tot:
            return ()
        return tuple(tot.get(q, ZERO).free for q in range(max(tot) + 1))

    def as_cohomology(self) -> CohomologyResult:
        return CohomologyResult(self.ring, self.totals())


@lru_cache(maxsize=4096)
def _restricted_cohomology(faces: frozenset[int], ring: Ring) -> CohomologyResult:
    return reduced_cohomology_of_faces(faces, ring)


def restricted_cohomology(cc: ColoredComplex, L: int, ring: Ring) -> CohomologyResult:
    """H̃^*(K_{α,L}) with the convention H̃^{-1}({0̂}) = ring."""
    return _restricted_cohomology(restricted_faces(cc, L), ring)


def hochster_table(cc: ColoredComplex, dims: Sequence[int], ring: Ring | str, model: str = "spheres") -> MultidegreeTable:
    ring = Ring.parse(ring)
    entries = {}
    for L in subsets_by_size(cc.all_blocks):
        s = shift_for(L, dims)
        for q, g in restricted_cohomology(cc, L, ring).groups.items():
            entries[(q + s, L)] = g
    return MultidegreeTable(model, ring, tuple(dims), entries)


def hochster_real(cc: ColoredComplex, ring: Ring | str) -> MultidegreeTable:
    return hochster_table(cc, model_dims(cc, "real"), ring, "real")


def hochster_torus(cc: ColoredComplex, ring: Ring | str) -> MultidegreeTable:
    return hochster_table(cc, model_dims(cc, "torus"), ring, "torus")


def hochster_spheres(cc: ColoredComplex, dims: Sequence[int], ring: Ring | str) -> MultidegreeTable:
    return hochster_table(cc, model_dims(cc, "spheres", dims), ring, "spheres")


def hochster(cc: ColoredComplex, model: str, ring: Ring | str, dims: Sequence[int] | None = None) -> MultidegreeTable:
    return hochster_table(cc, model_dims(cc, model, dims), ring, model)


@dataclass(frozen=True)
class WedgeSummand:
    L: int
    exponent: int
    faces: frozenset[int]


def stable_wedge_summands(cc: ColoredComplex, model: str, dims: Sequence[int] | None = None) -> list[WedgeSummand]:
    """One summand Σ^e K_{α,L} per block subset, e = Σ_{i∈L} d_i + 2."""
    d = model_dims(cc, model, dims)
    return [
        WedgeSummand(L, sum(d[i] for i in bits(L)) + 2, restricted_faces(cc, L))
        for L in subsets_by_size(cc.all_blocks)
    ]


def wedge_totals(summands: Sequence[WedgeSummand], ring: Ring | str) -> dict[int, Group]:
    """Reduced cohomology of the formal wedge, desuspended once.

    Σ^e of a complex moves H̃^j to H̃^{j+e}; one desuspension leaves j+e−1.
    With H̃^{-1}({0̂}) = ring the L=∅ summand supplies the degree-0 class.
    """
    ring = Ring.parse(ring)
    out: dict[int, Group] = {}
    for s in summands:
        for j, g in _restricted_cohomology(s.faces, ring).groups.items():
            q = j + s.exponent - 1
            out[q] = out.get(q, ZERO) + g
    return dict(sorted(out.items()))


__all__ = [
    "MultidegreeTable",
    "hochster",
    "hochster_real",
    "hochster_torus",
    "hochster_spheres",
    "stable_wedge_summands",
    "wedge_totals",
    "restricted_cohomology",
    "model_dims",
]
