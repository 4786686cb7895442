"""The finite DGA with basis t̄_J v̄_σ (J ∩ I_α(σ) = ∅), its cohomology ring over Z₂,
Tor dimensions, the transports to the cellular models, and the truncated Koszul model.

A monomial t̄_J v̄_σ is stored as ``CellLabel(sigma, J)``, the same key the
cellular models use.  Its dimension under a sphere profile d is
rank σ + Σ_{i ∈ I_α(σ) ∪ J} d_i; profile all-0 is the real case, all-1 the torus case.

Two sign rules exist for the differential:

* ``"koszul"``: the t-part carries κ_d(i, J), the face-ring part (−1)^{|J|} ε(σ,ω);
* ``"cellular"``: every term carries κ_d(i, I_α(σ) ∪ J) · ε(σ,ω).

Both reduce to the same map over Z₂.  Over Q and Z the Koszul signs do not
square to zero once an edge sits inside a block, so those rings default to the
cellular rule.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterator, Mapping, Sequence

from .cellular import CellCochainComplex, build_cochain, cup_cellular
from .errors import InvariantError, ValidationError
from .graded import CellLabel, Cochain, MultigradedComplex, labels_of
from .hochster import MultidegreeTable, model_dims
from .homology import Ring, reduce_coeff
from .simplicial import (
    ColoredComplex,
    bits,
    boundary_sign,
    is_nondegenerate,
    kappa,
    popcount,
    restricted_faces,
    vertex_tuple,
)
from .z2 import decompose, kernel_basis, quotient_basis

SIGN_RULES = ("koszul", "cellular")


@dataclass(frozen=True)
class RComplex(MultigradedComplex):
    dims: tuple[int, ...] = ()
    sign_rule: str = "koszul"


def r_dimension(cc: ColoredComplex, lab: CellLabel, dims: Sequence[int]) -> int:
    return popcount(lab.sigma) + sum(dims[i] for i in bits(cc.support(lab.sigma) | lab.J))


def build_R(cc: ColoredComplex, ring: Ring | str = Ring.Z2, dims: Sequence[int] | None = None,
            sign_rule: str | None = None) -> RComplex:
    """Build the DGA; ``dims`` absent means the torus profile (all ones)."""
    ring = Ring.parse(ring)
    dims = (1,) * cc.k if dims is None else model_dims(cc, "spheres", dims)
    if sign_rule is None:
        sign_rule = "koszul" if ring is Ring.Z2 else "cellular"
    if sign_rule not in SIGN_RULES:
        raise ValidationError(f"unknown sign rule {sign_rule!r}")
    labels = labels_of(cc)
    dim, boundary = {}, {}
    for lab in labels:
        dim[lab] = r_dimension(cc, lab, dims)
        sup = cc.support(lab.sigma)
        L = sup | lab.J
        parity = -1 if popcount(lab.J) & 1 else 1
        terms = []
        for v, omega in cc.cofaces(lab.sigma):
            i = cc.block_of[v]
            if not L >> i & 1:
                continue
            eps = boundary_sign(lab.sigma, omega)
            if sign_rule == "cellular":
                c = kappa(i, L, dims) * eps
            elif lab.J >> i & 1:
                c = kappa(i, lab.J, dims)
            else:
                c = parity * eps
            c = reduce_coeff(c, ring)
            if c:
                terms.append((CellLabel(omega, L & ~cc.support(omega)), c))
        boundary[lab] = tuple(terms)
    return RComplex(cc, ring, tuple(labels), dim, boundary, tuple(dims), sign_rule)


# --------------------------------------------------------------------------
# products


def multiply_R(m1: CellLabel, m2: CellLabel, cc: ColoredComplex) -> CellLabel | None:
    """Product of two normal-form monomials over Z₂; ``None`` is zero."""
    if m1.sigma not in cc.faces or m2.sigma not in cc.faces:
        raise ValidationError("monomial is not built on a face of this complex")
    if m1.J & m2.J:
        return None
    s1, s2 = cc.support(m1.sigma), cc.support(m2.sigma)
    if s1 & s2:
        return None
    join = m1.sigma | m2.sigma
    if join not in cc.faces:
        return None
    J = m1.J | m2.J
    if J & cc.support(join):
        return None
    return CellLabel(join, J)


def multiply_vectors(cc: ColoredComplex, a: Mapping[CellLabel, int], b: Mapping[CellLabel, int]) -> Cochain:
    out: dict = defaultdict(int)
    for la in a:
        for lb in b:
            p = multiply_R(la, lb, cc)
            if p is not None:
                out[p] ^= 1
    return {lab: 1 for lab, c in out.items() if c}


# --------------------------------------------------------------------------
# cohomology ring over Z₂


@dataclass(frozen=True)
class ClassInfo:
    dim: int
    L: int
    rep: tuple[CellLabel, ...]


@dataclass(frozen=True)
class RingPresentation:
    """Basis classes of H(R*) over Z₂ with structure constants.

    ``table[(a, b)]`` is the set of class indices whose sum is the product of
    classes ``a`` and ``b``; missing pairs multiply to zero.
    """

    classes: tuple[ClassInfo, ...]
    table: Mapping[tuple[int, int], frozenset[int]]
    unit: int
    _grading: Mapping = field(default=None, compare=False, repr=False)
    _blocks: Mapping = field(default=None, compare=False, repr=False)
    _index: Mapping = field(default=None, compare=False, repr=False)

    def mul(self, x: int, y: int) -> int:
        """Product of two elements written as bitsets over class indices."""
        out = 0
        for a in bits(x):
            for b in bits(y):
                for c in self.table.get((a, b), ()):
                    out ^= 1 << c
        return out

    def classify(self, vec: Mapping[CellLabel, int]) -> int:
        """Write a cocycle as a bitset over classes; raises if it is not a cocycle."""
        if not vec:
            return 0
        by_key: dict = defaultdict(int)
        for lab in vec:
            key = self._grading[lab]
            by_key[key] ^= 1 << self._blocks[key][0][lab]
        out = 0
        for key, v in by_key.items():
            ech = self._blocks[key][1]
            got = decompose(ech, v)
            if got is None:
                raise InvariantError("product representative is not a cocycle")
            for local in bits(got):
                out ^= 1 << self._index[key][local]
        return out

    def dims_by_degree(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for c in self.classes:
            out[c.dim] += 1
        return dict(sorted(out.items()))

    def check_axioms(self) -> list[str]:
        """Names of the ring axioms that fail (empty when all hold)."""
        failures = []
        n = len(self.classes)
        one = 1 << self.unit
        if any(self.mul(one, 1 << a) != 1 << a or self.mul(1 << a, one) != 1 << a for a in range(n)):
            failures.append("unit")
        if any(self.mul(1 << a, 1 << b) != self.mul(1 << b, 1 << a) for a in range(n) for b in range(n)):
            failures.append("commutativity")
        for a, b, c in iproduct(range(n), repeat=3):
            if self.mul(self.mul(1 << a, 1 << b), 1 << c) != self.mul(1 << a, self.mul(1 << b, 1 << c)):
                failures.append("associativity")
                break
        for (a, b), out in self.table.items():
            ca, cb = self.classes[a], self.classes[b]
            for c in out:
                cc_ = self.classes[c]
                if cc_.dim != ca.dim + cb.dim or cc_.L != ca.L | cb.L or ca.L & cb.L:
                    failures.append("multidegree")
                    break
        return failures


def cohomology_ring(rc: RComplex) -> RingPresentation:
    if rc.ring is not Ring.Z2:
        raise ValidationError("the cohomology ring is computed over Z2 only")
    rc.check_grading()
    cc = rc.cc
    groups: dict[tuple[int, int], list[CellLabel]] = defaultdict(list)
    for lab in rc.labels:
        groups[(rc.dim[lab], rc.part(lab))].append(lab)
    local = {key: {lab: n for n, lab in enumerate(labs)} for key, labs in groups.items()}

    def image_bits(lab: CellLabel) -> int:
        tgt = local.get((rc.dim[lab] + 1, rc.part(lab)), {})
        v = 0
        for t, _ in rc.boundary[lab]:
            v ^= 1 << tgt[t]
        return v

    classes: list[ClassInfo] = []
    grading = {lab: (rc.dim[lab], rc.part(lab)) for lab in rc.labels}
    blocks: dict = {}
    index: dict = {}
    for key in sorted(groups, key=lambda kv: (kv[0], popcount(kv[1]), kv[1])):
        labs = groups[key]
        cycles = kernel_basis([image_bits(lab) for lab in labs])
        prev = groups.get((key[0] - 1, key[1]), [])
        bounds = [image_bits(lab) for lab in prev]
        reps, ech = quotient_basis(sorted(cycles, key=lambda z: (popcount(z), z)), bounds)
        blocks[key] = (local[key], ech)
        index[key] = []
        for z in reps:
            index[key].append(len(classes))
            classes.append(ClassInfo(key[0], key[1], tuple(labs[j] for j in bits(z))))
    pres = RingPresentation(tuple(classes), {}, 0, grading, blocks, index)
    unit_vec = pres.classify({CellLabel(0, 0): 1})
    if popcount(unit_vec) != 1:
        raise InvariantError("the unit monomial does not give a single basis class")
    table = {}
    for a, ca in enumerate(classes):
        for b, cb in enumerate(classes):
            if ca.L & cb.L:
                continue
            prod = multiply_vectors(cc, dict.fromkeys(ca.rep, 1), dict.fromkeys(cb.rep, 1))
            got = pres.classify(prod)
            if got:
                table[(a, b)] = frozenset(bits(got))
    return RingPresentation(tuple(classes), table, unit_vec.bit_length() - 1, grading, blocks, index)


def check_leibniz(rc: RComplex) -> list[tuple[CellLabel, CellLabel]]:
    """Basis pairs where d̄(ab) ≠ d̄(a)b + a d̄(b) over Z₂."""
    cc = rc.cc
    bad = []
    for a in rc.labels:
        da = rc.d({a: 1})
        for b in rc.labels:
            p = multiply_R(a, b, cc)
            lhs = rc.d({p: 1}) if p is not None else {}
            rhs = multiply_vectors(cc, da, {b: 1})
            for lab in multiply_vectors(cc, {a: 1}, rc.d({b: 1})):
                rhs[lab] = rhs.get(lab, 0) ^ 1
            rhs = {k: 1 for k, v in rhs.items() if v}
            if lhs != rhs:
                bad.append((a, b))
    return bad


# --------------------------------------------------------------------------
# Tor


def tor_dimensions(cc: ColoredComplex, dims: Sequence[int] | None = None) -> MultidegreeTable:
    """Z₂-dimensions of H(R*) keyed by (total degree, L), for a non-degenerate partition."""
    if not is_nondegenerate(cc):
        raise ValidationError("Tor via the finite model needs a non-degenerate partition")
    rc = build_R(cc, Ring.Z2, dims)
    entries = {}
    for L, res in rc.cohomology_by_part().items():
        for q, g in res.groups.items():
            entries[(q, L)] = g
    return MultidegreeTable("tor", Ring.Z2, rc.dims, entries)


def tor_bidegree(q: int, L: int, dims: Sequence[int]) -> int:
    """Homological degree −|J| of a class of total degree q in piece L (non-degenerate case).

    There rank σ = |I_α(σ)|, so q = |L| − |J| + Σ_{i∈L} d_i.
    """
    return q - popcount(L) - sum(dims[i] for i in bits(L))


# --------------------------------------------------------------------------
# transports


@dataclass(frozen=True)
class Psi:
    """ψ (real) or ψ̂ (torus): t̄_J v̄_σ ↦ the cell (σ, J), over Z₂."""

    source: RComplex
    target: CellCochainComplex

    def __call__(self, vec: Mapping[CellLabel, int]) -> Cochain:
        return dict(vec)

    def commutes(self) -> bool:
        return all(self(self.source.d({lab: 1})) == self.target.d(self({lab: 1})) for lab in self.source.labels)

    def is_bijection(self) -> bool:
        return set(self.source.labels) == set(self.target.labels)

    def product_defects(self) -> list[tuple[CellLabel, CellLabel]]:
        """Basis pairs where ψ̂(ab) ≠ ψ̂(a) ∪ ψ̂(b)."""
        cc = self.source.cc
        bad = []
        for a in self.source.labels:
            for b in self.source.labels:
                p = multiply_R(a, b, cc)
                lhs = self({p: 1}) if p is not None else {}
                if lhs != cup_cellular(self.target, self({a: 1}), self({b: 1})):
                    bad.append((a, b))
        return bad


def transport_psi(cc: ColoredComplex, model: str, ring: Ring | str = Ring.Z2) -> Psi:
    if Ring.parse(ring) is not Ring.Z2:
        raise ValidationError("the transport to cellular cochains is defined over Z2 only")
    return Psi(build_R(cc, Ring.Z2, model_dims(cc, model)), build_cochain(cc, model, Ring.Z2))


# --------------------------------------------------------------------------
# products of simplicial cochains of the K_{α,L}


def combinatorial_cup(cc: ColoredComplex, a: frozenset[int], L: int, b: frozenset[int], Lp: int) -> tuple[frozenset[int], int]:
    """σ*·τ* = (σ∨τ)* when L∩L' = ∅ and the join is a face, else 0; over Z₂."""
    if L & Lp:
        return frozenset(), L | Lp
    out: set[int] = set()
    for s in a:
        for t in b:
            j = s | t
            if j in cc.faces:
                out ^= {j}
    return frozenset(out), L | Lp


def f_transport(cc: ColoredComplex, cochain: frozenset[int], L: int) -> Cochain:
    """σ* on K_{α,L} ↦ t̄_{L∖I(σ)} v̄_σ."""
    return {CellLabel(s, L & ~cc.support(s)): 1 for s in cochain}


def simplicial_cohomology_basis(cc: ColoredComplex, L: int) -> list[frozenset[int]]:
    """Cocycle representatives of a Z₂-basis of H̃^*(K_{α,L})."""
    faces = restricted_faces(cc, L)
    by_rank: dict[int, list[int]] = defaultdict(list)
    for s in sorted(faces, key=lambda s: (popcount(s), vertex_tuple(s))):
        by_rank[popcount(s)].append(s)
    local = {s: n for group in by_rank.values() for n, s in enumerate(group)}

    def image(s: int) -> int:
        v = 0
        for _, omega in cc.cofaces(s):
            if omega in faces:
                v ^= 1 << local[omega]
        return v

    out = []
    for r, group in sorted(by_rank.items()):
        cycles = kernel_basis([image(s) for s in group])
        bounds = [image(s) for s in by_rank.get(r - 1, [])]
        reps, _ = quotient_basis(cycles, bounds)
        out.extend(frozenset(group[j] for j in bits(z)) for z in reps)
    return out


# --------------------------------------------------------------------------
# truncated Koszul model over Z₂


Monomial = tuple[int, ...]  # exponent per vertex index


@dataclass(frozen=True)
class KoszulTruncation:
    """Elements t_J ⊗ m of Λ[t]⊗Z₂[K] with polynomial degree of m at most N."""

    cc: ColoredComplex
    N: int
    basis: tuple[tuple[int, Monomial], ...]

    def support(self, m: Monomial) -> int:
        return sum(1 << v for v, e in enumerate(m) if e)

    def degree(self, m: Monomial) -> int:
        return sum(m)

    def times_vertex(self, v: int, m: Monomial) -> Monomial | None:
        sup = self.support(m) | (1 << v)
        if sup not in self.cc.faces:
            return None
        return m[:v] + (m[v] + 1,) + m[v + 1:]

    def d_alpha(self, m: Monomial) -> dict[Monomial, int]:
        """Face-ring part: the derivation v_j ↦ Σ over same-block edges {v_j, v'} of v_j v'."""
        cc = self.cc
        out: dict[Monomial, int] = defaultdict(int)
        for j, e in enumerate(m):
            if not e & 1:
                continue
            for v, omega in cc.cofaces(1 << j):
                if cc.block_of[v] == cc.block_of[j]:
                    got = self.times_vertex(v, m)
                    if got is not None:
                        out[got] ^= 1
        return {k: 1 for k, c in out.items() if c}

    def d(self, vec: Mapping[tuple[int, Monomial], int]) -> dict[tuple[int, Monomial], int]:
        cc = self.cc
        out: dict = defaultdict(int)
        for (J, m) in vec:
            for i in bits(J):
                for v in bits(cc.blocks[i]):
                    got = self.times_vertex(v, m)
                    if got is not None:
                        out[(J & ~(1 << i), got)] ^= 1
            for got in self.d_alpha(m):
                out[(J, got)] ^= 1
        return {k: 1 for k, c in out.items() if c}

    def rho(self, elem: tuple[int, Monomial]) -> CellLabel | None:
        J, m = elem
        if any(e > 1 for e in m):
            return None
        s = self.support(m)
        if J & self.cc.support(s):
            return None
        return CellLabel(s, J)

    def rho_vec(self, vec: Mapping[tuple[int, Monomial], int]) -> Cochain:
        out: dict = defaultdict(int)
        for e in vec:
            r = self.rho(e)
            if r is not None:
                out[r] ^= 1
        return {k: 1 for k, c in out.items() if c}

    def interior(self, steps: int) -> Iterator[tuple[int, Monomial]]:
        """Basis elements whose image under ``steps`` differentials stays within degree N."""
        for e in self.basis:
            if self.degree(e[1]) + steps <= self.N:
                yield e

    def square_defects(self) -> list[tuple[int, Monomial]]:
        return [e for e in self.interior(2) if self.d(self.d({e: 1}))]

    def rho_defects(self, rc: RComplex | None = None) -> list[tuple[int, Monomial]]:
        rc = rc or build_R(self.cc, Ring.Z2)
        bad = []
        for e in self.interior(1):
            r = self.rho(e)
            rhs = rc.d({r: 1}) if r is not None else {}
            if self.rho_vec(self.d({e: 1})) != rhs:
                bad.append(e)
        return bad

    def face_ring_part_vanishes(self) -> bool:
        return all(not self.d_alpha(m) for J, m in self.basis if J == 0)

    def rho_surjective(self) -> bool:
        hit = {self.rho(e) for e in self.basis} - {None}
        return hit >= set(labels_of(self.cc)) if self.N >= max(popcount(s) for s in self.cc.faces) else True


def _monomials(cc: ColoredComplex, N: int) -> list[Monomial]:
    m = cc.m
    out = []
    for s in cc.sorted_faces():
        verts = list(bits(s))
        r = len(verts)
        if r > N:
            continue
        for extra in _compositions(N - r, r):
            mono = [0] * m
            for v, e in zip(verts, extra):
                mono[v] = 1 + e
            out.append(tuple(mono))
    return out


def _compositions(budget: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative ints with sum at most ``budget``."""
    if parts == 0:
        yield ()
        return
    for first in range(budget + 1):
        for rest in _compositions(budget - first, parts - 1):
            yield (first,) + rest


def truncated_koszul(cc: ColoredComplex, N: int) -> KoszulTruncation:
    if N < 1:
        raise ValidationError("truncation degree must be at least 1")
    monos = _monomials(cc, N)
    basis = tuple((J, mono) for J in range(1 << cc.k) for mono in monos)
    return KoszulTruncation(cc, N, basis)


__all__ = [
    "RComplex",
    "build_R",
    "multiply_R",
    "multiply_vectors",
    "cohomology_ring",
    "RingPresentation",
    "tor_dimensions",
    "tor_bidegree",
    "transport_psi",
    "combinatorial_cup",
    "f_transport",
    "simplicial_cohomology_basis",
    "truncated_koszul",
    "KoszulTruncation",
    "check_leibniz",
]
