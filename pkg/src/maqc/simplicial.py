"""Simplicial complexes with a vertex partition, and the sign conventions.

Simplices and color subsets are both plain ``int`` bitmasks:

* a simplex has bit ``v`` set for every vertex index ``v`` it contains, so the
  empty simplex is ``0``;
* a color subset ``L`` has bit ``i`` set for every block ``i`` it contains.
  Blocks are 0-based internally; reports print them 1-based.

Vertices are re-indexed so that the first block's vertices come first, then the
second block's, and so on, keeping the caller's order inside each block.  That
index order is the vertex order used by every sign in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError

MAX_BLOCKS = 64


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterator[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def subsets_by_size(universe: int) -> list[int]:
    """All submasks of ``universe``, ordered by popcount and then numerically."""
    elems = list(bits(universe))
    out = []
    for r in range(len(elems) + 1):
        out.extend(sorted(mask_of(c) for c in combinations(elems, r)))
    return out


@dataclass(frozen=True)
class ColoredComplex:
    """A finite simplicial complex K together with a partition of its vertices.

    ``faces`` always contains the empty simplex ``0``.  ``blocks[i]`` is the
    vertex mask of block ``i``; ``block_of[v]`` is the block of vertex ``v``.
    """

    names: tuple[str, ...]
    block_of: tuple[int, ...]
    blocks: tuple[int, ...]
    faces: frozenset[int]
    _support: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        sup = {s: self._compute_support(s) for s in self.faces}
        object.__setattr__(self, "_support", sup)

    def _compute_support(self, simplex: int) -> int:
        out = 0
        for v in bits(simplex):
            out |= 1 << self.block_of[v]
        return out

    @property
    def m(self) -> int:
        return len(self.names)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def all_blocks(self) -> int:
        return (1 << self.k) - 1

    def support(self, simplex: int) -> int:
        """I_α(σ) as a block mask; also valid for vertex sets that are not faces."""
        got = self._support.get(simplex)
        return got if got is not None else self._compute_support(simplex)

    def sorted_faces(self) -> list[int]:
        return sorted(self.faces, key=lambda s: (popcount(s), vertex_tuple(s)))

    def facets(self) -> list[int]:
        out = []
        for s in self.sorted_faces():
            if not any((s | (1 << v)) in self.faces for v in range(self.m) if not s >> v & 1):
                out.append(s)
        return out

    def vertex_names(self, simplex: int) -> list[str]:
        return [self.names[v] for v in bits(simplex)]

    def block_vertex_names(self) -> list[list[str]]:
        return [self.vertex_names(b) for b in self.blocks]

    def cofaces(self, simplex: int) -> Iterator[tuple[int, int]]:
        """Yield ``(v, ω)`` for every face ω = σ ∪ {v} of one higher rank."""
        for v in range(self.m):
            bit = 1 << v
            if not simplex & bit and (simplex | bit) in self.faces:
                yield v, simplex | bit

    def to_json(self) -> dict:
        return {
            "vertices": list(self.names),
            "facets": [self.vertex_names(f) for f in self.facets() if f],
            "partition": self.block_vertex_names(),
        }


def vertex_tuple(simplex: int) -> tuple[int, ...]:
    return tuple(bits(simplex))


def complex_from_facets(
    vertices: Sequence[str],
    facets: Iterable[Sequence[str]],
    partition: Sequence[Sequence[str]] | None = None,
) -> ColoredComplex:
    """Build a colored complex from named vertices, facets and blocks.

    A missing partition means the trivial one (every vertex its own block).
    Vertices that appear in no facet are kept as ghost vertices: they sit in a
    block but span no face.
    """
    vertices = [str(v) for v in vertices]
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise ValidationError(f"duplicate vertex {dup!r} in vertex list")
    if partition is None:
        partition = [[v] for v in vertices]
    partition = [[str(v) for v in block] for block in partition]
    if len(partition) > MAX_BLOCKS:
        raise ValidationError(f"at most {MAX_BLOCKS} blocks are supported, got {len(partition)}")

    known = set(vertices)
    seen: dict[str, int] = {}
    for i, block in enumerate(partition):
        if not block:
            raise ValidationError(f"partition block {i + 1} is empty")
        for v in block:
            if v not in known:
                raise ValidationError(f"partition block {i + 1} names unknown vertex {v!r}")
            if v in seen:
                raise ValidationError(f"vertex {v!r} appears in blocks {seen[v] + 1} and {i + 1}")
            seen[v] = i
    missing = [v for v in vertices if v not in seen]
    if missing:
        raise ValidationError(f"vertex {missing[0]!r} is not covered by the partition")

    # block-major order, caller's order within each block
    position = {v: n for n, v in enumerate(vertices)}
    ordered = [v for block in partition for v in sorted(block, key=position.__getitem__)]
    index = {v: n for n, v in enumerate(ordered)}
    block_of = tuple(seen[v] for v in ordered)
    blocks = tuple(mask_of(index[v] for v in block) for block in partition)

    faces = {0}
    for n, facet in enumerate(facets):
        facet = [str(v) for v in facet]
        for v in facet:
            if v not in index:
                raise ValidationError(f"facet {n} references unknown vertex {v!r}")
        if len(set(facet)) != len(facet):
            raise ValidationError(f"facet {n} repeats a vertex")
        top = mask_of(index[v] for v in facet)
        if top in faces:
            continue
        faces.update(_submasks(top))
    return ColoredComplex(tuple(ordered), block_of, blocks, frozenset(faces))


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def color_support(simplex: int, cc: ColoredComplex) -> int:
    if simplex not in cc.faces:
        raise ValidationError(f"{vertex_tuple(simplex)} is not a face")
    return cc.support(simplex)


def restricted_faces(cc: ColoredComplex, L: int) -> frozenset[int]:
    """Faces of K_{α,L}, in the original vertex indexing."""
    return frozenset(s for s in cc.faces if cc.support(s) & ~L == 0)


def restricted_subcomplex(cc: ColoredComplex, L: int) -> ColoredComplex:
    """K_{α,L} as a standalone colored complex on the blocks in ``L``."""
    keep = [i for i in range(cc.k) if L >> i & 1]
    partition = [cc.vertex_names(cc.blocks[i]) for i in keep]
    verts = [name for block in partition for name in block]
    facets = [cc.vertex_names(s) for s in restricted_faces(cc, L)]
    return complex_from_facets(verts, facets, partition)


def is_nondegenerate(cc: ColoredComplex) -> bool:
    return all(popcount(cc.support(s)) == popcount(s) for s in cc.faces if popcount(s) == 2)


def boundary_sign(sigma: int, omega: int) -> int:
    """ε(σ,ω) = (-1)^(number of vertices of ω below the vertex ω∖σ)."""
    extra = omega & ~sigma
    if sigma & ~omega or popcount(extra) != 1:
        raise ValidationError("σ must be a codimension-one face of ω")
    return -1 if popcount(sigma & (extra - 1)) & 1 else 1


def kappa(i: int, L: int, dims: Sequence[int] | None = None) -> int:
    """κ(i,L): sign from the blocks of ``L`` below block ``i``, weighted by ``dims``."""
    if not L >> i & 1:
        raise ValidationError(f"block {i + 1} is not in L")
    below = L & ((1 << i) - 1)
    if dims is None:
        r = popcount(below)
    else:
        r = sum(dims[j] for j in bits(below))
    return -1 if r & 1 else 1


def kappa_simplex(cc: ColoredComplex, simplex: int, L: int, dims: Sequence[int] | None = None) -> int:
    sign = 1
    for v in bits(simplex):
        sign *= kappa(cc.block_of[v], L, dims)
    return sign


def join_meet(sigma: int, tau: int, cc: ColoredComplex) -> tuple[int, int | None]:
    """(σ∧τ, σ∨τ); the join is ``None`` when no face contains both."""
    join = sigma | tau
    return sigma & tau, (join if join in cc.faces else None)
