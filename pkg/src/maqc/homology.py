"""Exact linear algebra and cohomology of finite cochain complexes.

Three coefficient rings are supported: Z₂ (rows packed into Python ints),
Q (fraction-free elimination) and Z (Smith normal form with arbitrary
precision integers).
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import InvariantError, ValidationError
from .simplicial import ColoredComplex, bits, boundary_sign, popcount


class Ring(enum.Enum):
    Z2 = "z2"
    Q = "q"
    Z = "z"

    @classmethod
    def parse(cls, text: "str | Ring") -> "Ring":
        if isinstance(text, Ring):
            return text
        try:
            return cls(text.lower())
        except ValueError:
            raise ValidationError(f"unknown coefficient ring {text!r} (use z2, q or z)") from None


# --------------------------------------------------------------------------
# abelian groups


def _prime_powers(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors(torsion: Iterable[int]) -> tuple[int, ...]:
    """Normalize any list of cyclic orders into invariant factors f₁ | f₂ | …."""
    by_prime: dict[int, list[int]] = defaultdict(list)
    for t in torsion:
        if t < 0:
            t = -t
        if t <= 1:
            continue
        for q in _prime_powers(t):
            p = next(d for d in range(2, q + 1) if q % d == 0)
            by_prime[p].append(q)
    if not by_prime:
        return ()
    for qs in by_prime.values():
        qs.sort(reverse=True)
    length = max(len(qs) for qs in by_prime.values())
    factors = [1] * length
    for qs in by_prime.values():
        for j, q in enumerate(qs):
            factors[j] *= q
    return tuple(sorted(factors))


@dataclass(frozen=True, order=True)
class Group:
    """Z^free ⊕ ⊕ Z/t for t in ``torsion`` (invariant factors, each ≥ 2)."""

    free: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", invariant_factors(self.torsion))

    def __add__(self, other: "Group") -> "Group":
        return Group(self.free + other.free, self.torsion + other.torsion)

    def __bool__(self) -> bool:
        return bool(self.free or self.torsion)

    def to_json(self) -> dict:
        return {"free": self.free, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


ZERO = Group()


# --------------------------------------------------------------------------
# ranks and Smith normal form


def rank_z2(vectors: Iterable[int]) -> int:
    """Rank over Z₂ of vectors given as bitsets."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                break
    return len(pivots)


def rank_q(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix, by Bareiss fraction-free elimination."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return 0
    n = len(A[0])
    rank, prev = 0, 1
    for col in range(n):
        piv = next((r for r in range(rank, len(A)) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, len(A)):
            a = A[r][col]
            row, prow = A[r], A[rank]
            for c in range(col, n):
                row[c] = (p * row[c] - a * prow[c]) // prev
        prev = p
        rank += 1
        if rank == len(A):
            break
    return rank


@dataclass(frozen=True)
class SmithResult:
    factors: tuple[int, ...]
    rank: int


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithResult:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    Uses the smallest-absolute-value pivot at each stage.  The pivot block is
    repeatedly cleaned until the pivot divides every remaining entry.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            pr = A[t]
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    q = a // p
                    row = A[i]
                    for c in range(t, n):
                        if pr[c]:
                            row[c] -= q * pr[c]
                    if row[t]:
                        dirty = True
            for j in range(t + 1, n):
                a = pr[j]
                if a:
                    q = a // p
                    for row in A:
                        if row[t]:
                            row[j] -= q * row[t]
                    if pr[j]:
                        dirty = True
            if dirty:
                # a smaller remainder sits in row t or column t: make it the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(pr[j]), t, j) for j in range(t + 1, n) if pr[j]]
                _, i, j = min(cand)
                A[t], A[i] = A[i], A[t]
                if j != t:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(x % p for x in A[i][t + 1:])),
                None,
            )
            if bad is None:
                break
            pr = A[t]
            for c in range(t, n):
                pr[c] += A[bad][c]
        t += 1
    factors = tuple(abs(A[i][i]) for i in range(t))
    return SmithResult(factors, len(factors))


# --------------------------------------------------------------------------
# cochain complexes


@dataclass(frozen=True)
class CochainComplex:
    """Finite cochain complex stored degree by degree.

    ``columns[q][j]`` lists ``(row, coeff)`` pairs: the image of the j-th basis
    element of degree q in the basis of degree q+1.
    """

    ring: Ring
    basis: Mapping[int, tuple[Hashable, ...]]
    columns: Mapping[int, tuple[tuple[tuple[int, int], ...], ...]]

    def dim(self, q: int) -> int:
        return len(self.basis.get(q, ()))

    def degrees(self) -> list[int]:
        return sorted(q for q, b in self.basis.items() if b)

    def dense(self, q: int) -> list[list[int]]:
        """d_q as a (dim q+1) × (dim q) integer matrix."""
        rows = [[0] * self.dim(q) for _ in range(self.dim(q + 1))]
        for j, col in enumerate(self.columns.get(q, ())):
            for i, c in col:
                rows[i][j] = c
        return rows


def reduce_coeff(c: int, ring: Ring) -> int:
    return c & 1 if ring is Ring.Z2 else c


def assemble(
    ring: Ring,
    labels: Iterable[Hashable],
    degree: Callable[[Hashable], int],
    boundary: Callable[[Hashable], Iterable[tuple[Hashable, int]]],
) -> CochainComplex:
    """Build a cochain complex from a labelled basis and a boundary rule."""
    by_deg: dict[int, list] = defaultdict(list)
    for lab in labels:
        by_deg[degree(lab)].append(lab)
    basis = {q: tuple(v) for q, v in by_deg.items()}
    index = {q: {lab: n for n, lab in enumerate(v)} for q, v in basis.items()}
    columns = {}
    for q, labs in basis.items():
        target = index.get(q + 1, {})
        cols = []
        for lab in labs:
            acc: dict[int, int] = defaultdict(int)
            for t, c in boundary(lab):
                if t not in target:
                    raise InvariantError(f"boundary of {lab!r} leaves the complex at {t!r}")
                acc[target[t]] += c
            cols.append(tuple(sorted((i, reduce_coeff(c, ring)) for i, c in acc.items() if reduce_coeff(c, ring))))
        columns[q] = tuple(cols)
    return CochainComplex(ring, basis, columns)


def check_square_zero(cx: CochainComplex) -> None:
    for q, cols in cx.columns.items():
        nxt = cx.columns.get(q + 1)
        for j, col in enumerate(cols):
            if not col:
                continue
            if nxt is None:
                raise InvariantError(f"degree {q} differential lands in a missing degree")
            acc: dict[int, int] = defaultdict(int)
            for i, c in col:
                for r, c2 in nxt[i]:
                    acc[r] += c * c2
            if any(reduce_coeff(v, cx.ring) for v in acc.values()):
                raise InvariantError(f"d∘d ≠ 0 on basis element {cx.basis[q][j]!r} of degree {q}")


def _z2_column_vectors(cols) -> list[int]:
    out = []
    for col in cols:
        v = 0
        for i, c in col:
            if c & 1:
                v ^= 1 << i
        out.append(v)
    return out


def differential_rank(cx: CochainComplex, q: int, ring: Ring | None = None) -> int:
    ring = ring or cx.ring
    cols = cx.columns.get(q, ())
    if not cols or not cx.dim(q + 1):
        return 0
    if ring is Ring.Z2:
        return rank_z2(_z2_column_vectors(cols))
    return rank_q(cx.dense(q))


@dataclass(frozen=True)
class CohomologyResult:
    """H^q for each degree with a nonzero group."""

    ring: Ring
    groups: Mapping[int, Group] = field(default_factory=dict)

    def __getitem__(self, q: int) -> Group:
        return self.groups.get(q, ZERO)

    def rank(self, q: int) -> int:
        return self[q].free

    def ranks(self, lo: int = 0) -> tuple[int, ...]:
        if not self.groups:
            return ()
        hi = max(self.groups)
        return tuple(self.rank(q) for q in range(lo, hi + 1))

    def __add__(self, other: "CohomologyResult") -> "CohomologyResult":
        out = dict(self.groups)
        for q, g in other.groups.items():
            out[q] = out.get(q, ZERO) + g
        return CohomologyResult(self.ring, out)

    def shifted(self, s: int) -> "CohomologyResult":
        return CohomologyResult(self.ring, {q + s: g for q, g in self.groups.items()})


def cohomology(cx: CochainComplex, ring: Ring | None = None, check: bool = True) -> CohomologyResult:
    """Cohomology of ``cx``; over Z the torsion comes from the incoming differential's SNF."""
    ring = ring or cx.ring
    if check:
        check_square_zero(cx)
    groups = {}
    for q in cx.degrees():
        out_rank = differential_rank(cx, q, ring)
        if ring is Ring.Z:
            if cx.columns.get(q - 1) and cx.dim(q):
                snf = smith_normal_form(cx.dense(q - 1))
                in_rank, torsion = snf.rank, tuple(f for f in snf.factors if f > 1)
            else:
                in_rank, torsion = 0, ()
        else:
            in_rank, torsion = differential_rank(cx, q - 1, ring), ()
        g = Group(cx.dim(q) - out_rank - in_rank, torsion)
        if g:
            groups[q] = g
    return CohomologyResult(ring, groups)


# --------------------------------------------------------------------------
# simplicial cochains


def build_reduced_cochain_from_faces(faces: frozenset[int], ring: Ring) -> CochainComplex:
    """Reduced simplicial cochains: a face of rank r sits in degree r−1."""
    ring = Ring.parse(ring)
    m = max((f.bit_length() for f in faces), default=0)

    def boundary(s: int):
        for v in range(m):
            b = 1 << v
            if not s & b and (s | b) in faces:
                yield s | b, boundary_sign(s, s | b)

    ordered = sorted(faces, key=lambda s: (popcount(s), tuple(bits(s))))
    return assemble(ring, ordered, lambda s: popcount(s) - 1, boundary)


def build_reduced_cochain(cc: ColoredComplex, ring: Ring | str) -> CochainComplex:
    return build_reduced_cochain_from_faces(cc.faces, Ring.parse(ring))


def reduced_cohomology_of_faces(faces: frozenset[int], ring: Ring) -> CohomologyResult:
    return cohomology(build_reduced_cochain_from_faces(faces, ring), ring)
