"""Simplicial posets and their stretch into a genuine simplicial complex.

Each maximal element is lifted to its own level of V(S) × {0..n}.  Every face
shared by two maximal elements is thickened into a prism running through all
levels.  The copies of a vertex v_i form block i of the partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Mapping, Sequence

from .errors import ValidationError
from .simplicial import ColoredComplex, complex_from_facets


@dataclass(frozen=True)
class PosetElement:
    id: str
    rank: int
    vertices: tuple[str, ...]
    facets: tuple[str, ...]


@dataclass(frozen=True)
class SimplicialPoset:
    elements: tuple[PosetElement, ...]
    vertex_order: tuple[str, ...]

    def by_id(self) -> dict[str, PosetElement]:
        return {e.id: e for e in self.elements}

    def lower_set(self, eid: str) -> frozenset[str]:
        """Ids of all non-empty elements at or below ``eid``."""
        table = self.by_id()
        seen, stack = set(), [eid]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(table[x].facets)
        return frozenset(seen)

    def maximal(self) -> list[PosetElement]:
        below = {f for e in self.elements for f in e.facets}
        return [e for e in self.elements if e.id not in below]


def _as_str_list(value: Any, what: str) -> list[str]:
    if not isinstance(value, list):
        raise ValidationError(f"{what} must be a list")
    return [str(x) for x in value]


def validate_poset(raw: Sequence[Mapping[str, Any]]) -> SimplicialPoset:
    """Check that every lower interval is the face poset of a simplex.

    Rank counts vertices, so rank-1 elements are the vertices.  An explicit
    rank-0 element is allowed and ignored; the empty face is implicit.
    """
    elems: list[PosetElement] = []
    ids: set[str] = set()
    for n, r in enumerate(raw):
        if not isinstance(r, Mapping) or "id" not in r or "rank" not in r:
            raise ValidationError(f"poset element {n} needs an id and a rank")
        eid = str(r["id"])
        if eid in ids:
            raise ValidationError(f"duplicate poset element id {eid!r}")
        ids.add(eid)
        rank = r["rank"]
        if not isinstance(rank, int) or rank < 0:
            raise ValidationError(f"element {eid!r} has an invalid rank")
        verts = tuple(_as_str_list(r.get("vertices", []), f"vertices of {eid!r}"))
        facets = tuple(_as_str_list(r.get("facets", []), f"facets of {eid!r}"))
        elems.append(PosetElement(eid, rank, verts, facets))

    empties = {e.id for e in elems if e.rank == 0}
    elems = [
        PosetElement(e.id, e.rank, e.vertices, tuple(f for f in e.facets if f not in empties))
        for e in elems
        if e.rank > 0
    ]
    table = {e.id: e for e in elems}
    order: list[str] = []
    for e in elems:
        for f in e.facets:
            if f not in table:
                raise ValidationError(f"element {e.id!r} lists unknown facet {f!r}")
        if len(set(e.vertices)) != len(e.vertices) or len(e.vertices) != e.rank:
            raise ValidationError(f"element {e.id!r} must list exactly {e.rank} distinct vertices")
        if e.rank == 1:
            if e.facets:
                raise ValidationError(f"vertex element {e.id!r} cannot have non-empty facets")
            order.append(e.vertices[0])
    if len(set(order)) != len(order):
        raise ValidationError("two rank-1 elements name the same vertex")
    vertex_ids = {e.vertices[0]: e.id for e in elems if e.rank == 1}

    poset = SimplicialPoset(tuple(elems), tuple(order))
    for e in elems:
        if e.rank == 1:
            continue
        if len(e.facets) != e.rank or len(set(e.facets)) != e.rank:
            raise ValidationError(f"element {e.id!r} of rank {e.rank} needs {e.rank} distinct facets")
        vs = set(e.vertices)
        for v in vs:
            if v not in vertex_ids:
                raise ValidationError(f"element {e.id!r} uses vertex {v!r} with no rank-1 element")
        missing = set()
        for f in e.facets:
            fe = table[f]
            if fe.rank != e.rank - 1 or not set(fe.vertices) < vs:
                raise ValidationError(f"facet {f!r} of {e.id!r} is not a codimension-one face")
            missing.add(frozenset(vs - set(fe.vertices)))
        if len(missing) != e.rank:
            raise ValidationError(f"facets of {e.id!r} do not omit distinct vertices")
        lower = poset.lower_set(e.id)
        shapes = [frozenset(table[x].vertices) for x in lower]
        if len(shapes) != 2 ** e.rank - 1 or len(set(shapes)) != len(shapes):
            raise ValidationError(f"lower interval of {e.id!r} is not a Boolean lattice")
    return poset


def parse_poset(data: Mapping[str, Any]) -> SimplicialPoset:
    if "elements" not in data:
        raise ValidationError("poset input needs an 'elements' list")
    raw = data["elements"]
    if not isinstance(raw, list):
        raise ValidationError("'elements' must be a list")
    return validate_poset(raw)


def prism_triangulation(simplex: Sequence[str], level: int) -> list[tuple[tuple[str, int], ...]]:
    """Staircase triangulation of simplex × [level, level+1].

    With vertices u_0 < … < u_r the pieces are
    {(u_0,j),…,(u_s,j),(u_s,j+1),…,(u_r,j+1)} for s = 0..r.
    """
    if not simplex:
        raise ValidationError("cannot build a prism over the empty simplex")
    r = len(simplex)
    return [
        tuple((u, level) for u in simplex[: s + 1]) + tuple((u, level + 1) for u in simplex[s:])
        for s in range(r)
    ]


@dataclass(frozen=True)
class StretchResult:
    complex: ColoredComplex
    levels: Mapping[str, int]
    n: int


def vertex_name(v: str, level: int) -> str:
    return f"{v}@{level}"


def stretch(poset: SimplicialPoset) -> StretchResult:
    order = {v: n for n, v in enumerate(poset.vertex_order)}
    table = poset.by_id()
    tops = poset.maximal()
    levels = {e.id: t for t, e in enumerate(tops)}
    n = max(len(tops) - 1, 0)

    def ordered(vs) -> list[str]:
        return sorted(vs, key=order.__getitem__)

    facets: list[tuple[tuple[str, int], ...]] = []
    for e in tops:
        facets.append(tuple((u, levels[e.id]) for u in ordered(e.vertices)))
    lowers = {e.id: poset.lower_set(e.id) for e in tops}
    thick: set[tuple[str, ...]] = set()
    for a, b in combinations(tops, 2):
        common = lowers[a.id] & lowers[b.id]
        for x in common:
            thick.add(tuple(ordered(table[x].vertices)))
    for simplex in sorted(thick, key=lambda s: (len(s), [order[u] for u in s])):
        if n == 0:
            facets.append(tuple((u, 0) for u in simplex))
        for j in range(n):
            facets.extend(prism_triangulation(simplex, j))

    present = {p for f in facets for p in f}
    vertices = sorted(present, key=lambda p: (p[1], order[p[0]]))
    partition = [
        [vertex_name(*p) for p in sorted((p for p in present if p[0] == v), key=lambda p: p[1])]
        for v in poset.vertex_order
    ]
    partition = [b for b in partition if b]
    cc = complex_from_facets(
        [vertex_name(*p) for p in vertices],
        [[vertex_name(*p) for p in f] for f in facets],
        partition,
    )
    return StretchResult(cc, levels, n)


def poset_from_complex(cc: ColoredComplex) -> SimplicialPoset:
    """Face poset of a simplicial complex, ids being the vertex names joined by '+'."""
    raw = []
    for s in cc.sorted_faces():
        if not s:
            continue
        names = cc.vertex_names(s)
        facets = ["+".join(n for n in names if n != drop) for drop in names] if len(names) > 1 else []
        raw.append({"id": "+".join(names), "rank": len(names), "vertices": names, "facets": facets})
    return validate_poset(raw)
