"""Cellular cochain models of the real and torus quotient spaces.

A basis cell is a pair (σ, J) with σ a face of K and J a set of blocks
disjoint from I_α(σ).  In factor i the cell is the face σ ∩ α_i when i meets σ,
the empty face when i ∈ J, and the ghost face otherwise.

Differential: extend σ by one vertex v whose block lies in I_α(σ) ∪ J.  The new
cell keeps the same L = I_α(σ) ∪ J, with J shrunk by the block of v when that
block is new.  The real model uses the sign ε(σ,ω), the torus model multiplies
it by κ(block of v, L).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Mapping

from .errors import ValidationError
from .graded import CellLabel, Cochain, MultigradedComplex, labels_of
from .homology import CochainComplex, Ring, build_reduced_cochain_from_faces, reduce_coeff
from .simplicial import (
    ColoredComplex,
    boundary_sign,
    kappa,
    kappa_simplex,
    popcount,
    restricted_faces,
)

MODELS = ("real", "torus")


@dataclass(frozen=True)
class CellCochainComplex(MultigradedComplex):
    model: str = "real"


def _build(cc: ColoredComplex, ring: Ring | str, model: str) -> CellCochainComplex:
    ring = Ring.parse(ring)
    labels = labels_of(cc)
    dim, boundary = {}, {}
    for lab in labels:
        sup = cc.support(lab.sigma)
        L = sup | lab.J
        if model == "real":
            dim[lab] = popcount(lab.sigma)
        else:
            dim[lab] = popcount(lab.sigma) + popcount(sup) + popcount(lab.J)
        terms = []
        for v, omega in cc.cofaces(lab.sigma):
            i = cc.block_of[v]
            if not L >> i & 1:
                continue
            c = boundary_sign(lab.sigma, omega)
            if model == "torus":
                c *= kappa(i, L)
            c = reduce_coeff(c, ring)
            if c:
                terms.append((CellLabel(omega, L & ~cc.support(omega)), c))
        boundary[lab] = tuple(terms)
    return CellCochainComplex(cc, ring, tuple(labels), dim, boundary, model)


def build_real_cochain(cc: ColoredComplex, ring: Ring | str) -> CellCochainComplex:
    return _build(cc, ring, "real")


def build_torus_cochain(cc: ColoredComplex, ring: Ring | str) -> CellCochainComplex:
    return _build(cc, ring, "torus")


def build_cochain(cc: ColoredComplex, model: str, ring: Ring | str) -> CellCochainComplex:
    if model not in MODELS:
        raise ValidationError(f"cellular models exist for real and torus only, not {model!r}")
    return _build(cc, ring, model)


def split_multidegree(cx: CellCochainComplex) -> dict[int, CochainComplex]:
    return cx.split_multidegree()


# --------------------------------------------------------------------------
# transport from the simplicial cochains of K_{α,L}


@dataclass(frozen=True)
class Transport:
    """Basis map σ* ↦ coeff · (σ, L ∖ I_α(σ)) from C^*(K_{α,L}) into C^{*,L}."""

    L: int
    model: str
    shift: int
    image: Mapping[int, tuple[CellLabel, int]]
    source: CochainComplex
    target: CellCochainComplex

    def __call__(self, cochain: Mapping[int, int]) -> Cochain:
        out = {}
        for s, c in cochain.items():
            lab, k = self.image[s]
            v = reduce_coeff(c * k, self.target.ring)
            if v:
                out[lab] = v
        return out

    def commutes(self) -> bool:
        """φ∘d = d∘φ on every basis element, as an exact identity."""
        for q, labs in self.source.basis.items():
            for j, s in enumerate(labs):
                dsimp = {self.source.basis[q + 1][i]: c for i, c in self.source.columns[q][j]}
                if self(dsimp) != self.target.d(self({s: 1})):
                    return False
        return True


def transport_phi(cc: ColoredComplex, L: int, model: str, ring: Ring | str = Ring.Z,
                  cx: CellCochainComplex | None = None) -> Transport:
    ring = Ring.parse(ring)
    cx = cx or build_cochain(cc, model, ring)
    faces = restricted_faces(cc, L)
    image = {}
    for s in faces:
        c = kappa_simplex(cc, s, L) if model == "torus" else 1
        image[s] = (CellLabel(s, L & ~cc.support(s)), c)
    shift = 1 if model == "real" else popcount(L) + 1
    return Transport(L, model, shift, image, build_reduced_cochain_from_faces(faces, ring), cx)


# --------------------------------------------------------------------------
# cup product


GHOST, EMPTY, FACE = "ghost", "empty", "face"


def factor_labels(cc: ColoredComplex, lab: CellLabel) -> list[tuple[str, int]]:
    """The k-tuple form of a cell: (kind, simplex inside that block) per factor."""
    out = []
    for i in range(cc.k):
        if lab.J >> i & 1:
            out.append((EMPTY, 0))
        elif lab.sigma & cc.blocks[i]:
            out.append((FACE, lab.sigma & cc.blocks[i]))
        else:
            out.append((GHOST, 0))
    return out


def _factor_dim(kind: str, simplex: int, model: str) -> int:
    if kind == GHOST:
        return 0
    if model == "real":
        return popcount(simplex)
    return popcount(simplex) + 1


def _factor_product(a: tuple[str, int], b: tuple[str, int], model: str) -> tuple[str, int] | None:
    if a[0] == GHOST:
        return b
    if b[0] == GHOST:
        return a
    if model == "torus":
        return None
    if a[0] == EMPTY and b[0] == EMPTY:
        return a
    if a[0] == FACE and b[0] == FACE and not a[1] & b[1]:
        return FACE, a[1] | b[1]
    return None


def cup_labels(cc: ColoredComplex, a: CellLabel, b: CellLabel, model: str) -> tuple[CellLabel, int] | None:
    """Product of two basis cells, with the cross-product sign, or ``None`` for zero."""
    fa, fb = factor_labels(cc, a), factor_labels(cc, b)
    sigma, J, sign_exp = 0, 0, 0
    da = [_factor_dim(*f, model) for f in fa]
    db = [_factor_dim(*f, model) for f in fb]
    for i in range(cc.k):
        p = _factor_product(fa[i], fb[i], model)
        if p is None:
            return None
        if p[0] == EMPTY:
            J |= 1 << i
        elif p[0] == FACE:
            sigma |= p[1]
    if sigma not in cc.faces:
        return None
    for i in range(cc.k):
        for j in range(i):
            sign_exp += da[i] * db[j]
    return CellLabel(sigma, J), (-1 if sign_exp & 1 else 1)


def cup_cellular(cx: CellCochainComplex, a: Mapping[CellLabel, int], b: Mapping[CellLabel, int],
                 other: CellCochainComplex | None = None) -> Cochain:
    """Cochain-level cup product.  Only the Z₂ torus case carries a ring guarantee."""
    if other is not None and (other.cc != cx.cc or other.model != cx.model):
        raise ValidationError("cup product of cochains from different complexes")
    out: dict = defaultdict(int)
    for la, ca in a.items():
        for lb, cb in b.items():
            got = cup_labels(cx.cc, la, lb, cx.model)
            if got is not None:
                out[got[0]] += ca * cb * got[1]
    return {lab: reduce_coeff(c, cx.ring) for lab, c in out.items() if reduce_coeff(c, cx.ring)}


def euler_characteristic(cx: CellCochainComplex) -> int:
    return sum(-1 if cx.dim[lab] & 1 else 1 for lab in cx.labels)


def census_euler(cc: ColoredComplex, model: str) -> int:
    """χ from counting faces: a face σ contributes 2^(k−|I(σ)|) cells, signed by their dimensions."""
    total = 0
    for s in cc.faces:
        sup = cc.support(s)
        free = cc.k - popcount(sup)
        if model == "real":
            total += (-1) ** popcount(s) * 2 ** free
        else:
            # J ranges over subsets of the free blocks, each adding one to the dimension
            total += (-1) ** (popcount(s) + popcount(sup)) * sum(
                (-1) ** r * comb(free, r) for r in range(free + 1)
            )
    return total


__all__ = [
    "CellCochainComplex",
    "build_real_cochain",
    "build_torus_cochain",
    "build_cochain",
    "split_multidegree",
    "transport_phi",
    "cup_cellular",
    "cup_labels",
    "factor_labels",
    "euler_characteristic",
    "census_euler",
]
