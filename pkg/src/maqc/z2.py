"""Z₂ vector spaces as Python int bitsets: echelon forms, kernels, quotients."""

from __future__ import annotations

from typing import Iterable, Sequence


class Echelon:
    """Incrementally built echelon basis that remembers how each row was formed.

    Rows are keyed by their highest set bit.  ``tags`` records, for each row, a
    bitset over caller-chosen generator ids, so a reduced vector can be written
    back in terms of those generators.
    """

    def __init__(self) -> None:
        self.rows: dict[int, tuple[int, int]] = {}

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        while v:
            h = v.bit_length() - 1
            row = self.rows.get(h)
            if row is None:
                break
            v ^= row[0]
            tag ^= row[1]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = (v, tag)
        return True

    def __len__(self) -> int:
        return len(self.rows)


def kernel_basis(images: Sequence[int]) -> list[int]:
    """Basis of {x : Σ x_j images[j] = 0}, as bitsets over the column index j."""
    ech = Echelon()
    out = []
    for j, img in enumerate(images):
        v, tag = ech.reduce(img, 1 << j)
        if v:
            ech.rows[v.bit_length() - 1] = (v, tag)
        else:
            out.append(tag)
    return out


def quotient_basis(cycles: Iterable[int], boundaries: Iterable[int]) -> tuple[list[int], Echelon]:
    """Pick cycles that form a basis modulo the span of ``boundaries``.

    Returns the chosen representatives and an echelon whose tags are bitsets over
    the chosen representatives' positions (boundary rows carry tag 0).
    """
    ech = Echelon()
    for b in boundaries:
        ech.add(b)
    reps: list[int] = []
    for z in cycles:
        if ech.add(z, 1 << len(reps)):
            reps.append(z)
    return reps, ech


def decompose(ech: Echelon, v: int) -> int | None:
    """Coordinates of ``v`` over the representatives, or None if ``v`` is outside the span."""
    rest, tag = ech.reduce(v)
    return None if rest else tag
