"""Integer exponent lattices: Hermite normal form bases and coordinates.

The multiplicative group generated by the monomials of a vector field is a
sublattice of Z^n.  This module computes its canonical row-style Hermite
normal form basis (positive pivots, strictly increasing pivot columns,
entries above each pivot reduced into [0, pivot)) by exact integer row
operations, and solves for integer coordinates of lattice members in that
basis.

The basis generates *exactly* the subgroup spanned by the input generators.
There is deliberately no saturation: the lattice of {(2, -4)} is 2Z*(1, -2),
not Z*(1, -2), and collapsing that distinction would change completeness
verdicts downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Exponent = tuple[int, ...]


class NotInLattice(Exception):
    """Raised when a vector has no integer coordinates in the given basis."""


@dataclass(frozen=True)
class GeneratorSet:
    """A finite family of exponent vectors in Z^dim; duplicates allowed."""

    dim: int
    generators: tuple[Exponent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        for g in self.generators:
            if len(g) != self.dim:
                raise ValueError(f"generator {g} has length {len(g)}, expected {self.dim}")
            if not all(isinstance(e, int) for e in g):
                raise ValueError(f"generator {g} has non-integer entries")


@dataclass(frozen=True)
class LatticeBasis:
    """Row-HNF basis of a sublattice of Z^dim; ``rank`` is the row count."""

    dim: int
    rows: tuple[Exponent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        previous_pivot = -1
        for row in self.rows:
            if len(row) != self.dim:
                raise ValueError(f"basis row {row} has length {len(row)}, expected {self.dim}")
            pivot_col = _pivot_column(row)
            if pivot_col is None:
                raise ValueError("basis rows must be nonzero")
            if row[pivot_col] <= 0:
                raise ValueError(f"basis row {row} has a nonpositive pivot")
            if pivot_col <= previous_pivot:
                raise ValueError("pivot columns must strictly increase")
            previous_pivot = pivot_col

    @property
    def rank(self) -> int:
        return len(self.rows)


def _pivot_column(row: Sequence[int]) -> int | None:
    for j, entry in enumerate(row):
        if entry != 0:
            return j
    return None


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) > 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_basis(generators: GeneratorSet) -> LatticeBasis:
    """Canonical HNF basis of the subgroup of Z^n spanned by the generators.

    Only unimodular row operations are used (swap, negate, and the 2x2
    extended-Euclid block, which has determinant 1), so the row span is
    preserved exactly at every step.  The HNF of a lattice is unique, hence
    the output is independent of generator order and multiplicity.
    """
    n = generators.dim
    rows: list[list[int]] = [list(g) for g in generators.generators if any(g)]
    fixed = 0
    for col in range(n):
        pivot_index = None
        for i in range(fixed, len(rows)):
            if rows[i][col] == 0:
                continue
            if pivot_index is None:
                pivot_index = i
                continue
            a, b = rows[pivot_index][col], rows[i][col]
            g, s, t = _xgcd(a, b)
            pivot_row, other_row = rows[pivot_index], rows[i]
            rows[pivot_index] = [s * x + t * y for x, y in zip(pivot_row, other_row)]
            rows[i] = [(a // g) * y - (b // g) * x for x, y in zip(pivot_row, other_row)]
        if pivot_index is None:
            continue
        rows[fixed], rows[pivot_index] = rows[pivot_index], rows[fixed]
        if rows[fixed][col] < 0:
            rows[fixed] = [-x for x in rows[fixed]]
        pivot = rows[fixed][col]
        for i in range(fixed):
            q = rows[i][col] // pivot  # floor division puts the entry in [0, pivot)
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[fixed])]
        fixed += 1
    return LatticeBasis(n, tuple(tuple(row) for row in rows[:fixed]))


def coordinates(alpha: Sequence[int], basis: LatticeBasis) -> tuple[int, ...]:
    """Integer coordinates k with sum_i k_i * rows_i = alpha, if they exist.

    The echelon shape makes the solution unique: peel off one coordinate per
    pivot column, top row first, and demand an exact zero residual.  Raises
    ``NotInLattice`` otherwise.
    """
    alpha = tuple(alpha)
    if len(alpha) != basis.dim:
        raise ValueError(f"vector {alpha} has length {len(alpha)}, expected {basis.dim}")
    residual = list(alpha)
    ks: list[int] = []
    for row in basis.rows:
        col = _pivot_column(row)
        assert col is not None
        quotient, remainder = divmod(residual[col], row[col])
        if remainder:
            raise NotInLattice(f"{alpha} is not in the lattice")
        if quotient:
            residual = [x - quotient * y for x, y in zip(residual, row)]
        ks.append(quotient)
    if any(residual):
        raise NotInLattice(f"{alpha} is not in the lattice")
    return tuple(ks)


def contains(alpha: Sequence[int], basis: LatticeBasis) -> bool:
    try:
        coordinates(alpha, basis)
    except NotInLattice:
        return False
    return True


def primitive_rank1_generator(basis: LatticeBasis) -> Exponent:
    """The single row of a rank-1 basis (pivot already sign-normalized)."""
    if basis.rank != 1:
        raise ValueError(f"expected a rank-1 basis, got rank {basis.rank}")
    return basis.rows[0]
