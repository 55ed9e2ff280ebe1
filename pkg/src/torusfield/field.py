"""Vector fields z_i' = z_i p_i(z) on the torus and the completeness decision.

The decision procedure is a lattice-rank recursion.  Let M be the subgroup of
Z^n generated by the exponent vectors of all monomials of the p_i:

* if every p_i is constant (rank 0), the field is a diagonal linear flow and
  is complete;
* if rank M = n, the field is not complete;
* otherwise pick the HNF basis rows a_ij of M, rewrite p_i(Z) = f_i(W) with
  W_i = Z^{a_i}, and recurse on the m-dimensional field
  w_i' = w_i * sum_j a_ij f_j(w).

Each recursion step is recorded as a ``ReductionStep`` whose defining
polynomial identities can be replayed exactly, so every verdict ships with a
machine-checkable certificate.

The module also provides the divergence (whose vanishing is the volume-form
criterion), transport of fields under unimodular monomial substitutions, and
the canonical form of complete fields in two variables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .laurent import GR_ZERO, GaussianRational, LaurentPoly, substitute_monomials
from .lattice import (
    GeneratorSet,
    LatticeBasis,
    NotInLattice,
    coordinates,
    hnf_basis,
    primitive_rank1_generator,
)


class Verdict(enum.Enum):
    COMPLETE = "complete"
    INCOMPLETE = "incomplete"


class Terminal(enum.Enum):
    BASE_CONSTANT = "base-constant"
    RANK_EQUALS_DIM = "rank-equals-dim"


@dataclass(frozen=True)
class VectorField:
    """The field z_i' = z_i * ps[i](z) on the torus of dimension ``dim``.

    ``dim`` may be zero for the trivial torus; that case only arises as the
    reduction of an all-constant field.
    """

    dim: int
    ps: tuple[LaurentPoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ps", tuple(self.ps))
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.ps) != self.dim:
            raise ValueError(f"expected {self.dim} coefficient polynomials, got {len(self.ps)}")
        for p in self.ps:
            if not isinstance(p, LaurentPoly):
                raise TypeError(f"expected LaurentPoly, got {type(p).__name__}")
            if p.dim != self.dim:
                raise ValueError(f"coefficient polynomial has dimension {p.dim}, expected {self.dim}")


@dataclass(frozen=True)
class ReductionStep:
    """One application of the rewrite p_i(Z) = f_i(W), W_i = Z^{a_i}.

    The defining identities (checked by ``verify_certificate``):
      reduced.ps[i] == sum_j basis.rows[i][j] * f_list[j]
      substituting W_i = Z^{a_i} into f_list[j] reproduces the parent ps[j]
    """

    dim_before: int
    basis: LatticeBasis
    f_list: tuple[LaurentPoly, ...]
    reduced: VectorField

    def __post_init__(self) -> None:
        object.__setattr__(self, "f_list", tuple(self.f_list))
        if self.basis.dim != self.dim_before:
            raise ValueError("basis dimension does not match the parent field")
        if len(self.f_list) != self.dim_before:
            raise ValueError("need one rewritten polynomial per parent coordinate")
        if self.reduced.dim != self.basis.rank:
            raise ValueError("reduced field dimension must equal the lattice rank")
        for f in self.f_list:
            if f.dim != self.basis.rank:
                raise ValueError("rewritten polynomials must live in rank-many variables")


@dataclass(frozen=True)
class CompletenessCertificate:
    """Replayable evidence for a completeness verdict.

    The chain lists the reduction steps applied in order; ``terminal``
    records why the recursion stopped at the final field.
    """

    verdict: Verdict
    chain: tuple[ReductionStep, ...]
    terminal: Terminal

    def __post_init__(self) -> None:
        object.__setattr__(self, "chain", tuple(self.chain))
        if (self.verdict is Verdict.COMPLETE) != (self.terminal is Terminal.BASE_CONSTANT):
            raise ValueError("verdict and terminal tag are inconsistent")


@dataclass(frozen=True)
class Form2:
    """Canonical data (a1, a2, f, c1, c2) of a complete field on the 2-torus:

        z1' = z1 * ( a2 * f(z1^a1 z2^a2) + c1)
        z2' = -z2 * ( a1 * f(z1^a1 z2^a2) + c2)

    ``f`` is a one-variable Laurent polynomial.  Extraction normalizes so
    that f has zero constant term and (a1, a2) is the sign-normalized lattice
    generator; arbitrary parameter values are accepted as generator input.
    """

    a1: int
    a2: int
    f: LaurentPoly
    c1: GaussianRational
    c2: GaussianRational

    def __post_init__(self) -> None:
        if self.f.dim != 1:
            raise ValueError("f must be a Laurent polynomial in one variable")
        object.__setattr__(self, "c1", GaussianRational.coerce(self.c1))
        object.__setattr__(self, "c2", GaussianRational.coerce(self.c2))


def exponent_lattice(field: VectorField) -> GeneratorSet:
    """Exponent vectors of all monomials appearing in the ps, deduplicated."""
    seen: set[tuple[int, ...]] = set()
    for p in field.ps:
        seen.update(p.support())
    return GeneratorSet(field.dim, tuple(sorted(seen)))


def reduce(field: VectorField) -> ReductionStep:
    """One rewrite step; requires the exponent lattice rank to be < dim.

    Every support monomial is itself a generator of the lattice, so its
    coordinates always exist; a failure there is an invariant breach, not an
    input error.
    """
    basis = hnf_basis(exponent_lattice(field))
    m = basis.rank
    if m >= field.dim:
        raise ValueError(f"exponent lattice has full rank {m}; the field does not reduce")
    f_list = []
    for p in field.ps:
        try:
            coords = {alpha: coordinates(alpha, basis) for alpha in p.support()}
        except NotInLattice as exc:  # pragma: no cover - impossible by construction
            raise AssertionError("support monomial outside its own lattice") from exc
        f_list.append(p.rewrite_in_basis(coords, m))
    reduced_ps = []
    for row in basis.rows:
        total = LaurentPoly.zero(m)
        for a, f in zip(row, f_list):
            if a:
                total = total + f * a
        reduced_ps.append(total)
    return ReductionStep(
        dim_before=field.dim,
        basis=basis,
        f_list=tuple(f_list),
        reduced=VectorField(m, tuple(reduced_ps)),
    )


def decide_complete(field: VectorField) -> CompletenessCertificate:
    """Decide completeness by the lattice-rank recursion, with certificate.

    Terminates because each reduction strictly decreases the dimension.
    """
    chain: list[ReductionStep] = []
    current = field
    while True:
        if all(p.is_constant() for p in current.ps):
            return CompletenessCertificate(Verdict.COMPLETE, tuple(chain), Terminal.BASE_CONSTANT)
        if hnf_basis(exponent_lattice(current)).rank == current.dim:
            return CompletenessCertificate(Verdict.INCOMPLETE, tuple(chain), Terminal.RANK_EQUALS_DIM)
        step = reduce(current)
        chain.append(step)
        current = step.reduced


def verify_certificate(field: VectorField, certificate: CompletenessCertificate) -> bool:
    """Replay a certificate against a field; False means invalid, never raises.

    Checks, exactly: both polynomial identities of every step, strictly
    decreasing dimensions along the chain, and that the terminal tag holds
    for the final field.
    """
    current = field
    for step in certificate.chain:
        if step.dim_before != current.dim or step.reduced.dim >= current.dim:
            return False
        if len(step.f_list) != current.dim:
            return False
        rows = step.basis.rows
        m = step.basis.rank
        for p, f in zip(current.ps, step.f_list):
            if f.dim != m or substitute_monomials(f, rows, current.dim) != p:
                return False
        for row, q in zip(rows, step.reduced.ps):
            total = LaurentPoly.zero(m)
            for a, f in zip(row, step.f_list):
                if a:
                    total = total + f * a
            if total != q:
                return False
        current = step.reduced
    if certificate.terminal is Terminal.BASE_CONSTANT:
        return all(p.is_constant() for p in current.ps)
    return hnf_basis(exponent_lattice(current)).rank == current.dim and not all(
        p.is_constant() for p in current.ps
    )


def divergence(field: VectorField) -> LaurentPoly:
    """sum_i z_i * d(ps[i])/dz_i; the field preserves dz_1/z_1 ^ ... ^ dz_n/z_n
    exactly when this vanishes.  Complete fields always have zero divergence;
    the converse fails.
    """
    total = LaurentPoly.zero(field.dim)
    for axis, p in enumerate(field.ps):
        total = total + p.euler_derivative(axis)
    return total


# -- exact integer matrix helpers (tiny sizes, Bareiss elimination) ----------


def _det(matrix: Sequence[Sequence[int]]) -> int:
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
            m[i][k] = 0
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def _adjugate(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(matrix)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return adj


def pushforward(field: VectorField, matrix: Sequence[Sequence[int]]) -> VectorField:
    """Transport the field through the monomial substitution given by ``matrix``.

    ``matrix`` must be a unimodular n x n integer matrix A; the new
    coordinates are zeta_i = prod_j z_j^{A_ij}, and the transported
    coefficients are p'_i(zeta) = sum_j A_ij p_j(z(zeta)) with z = zeta^{A^-1},
    computed by exact monomial substitution.
    """
    n = field.dim
    rows = [list(row) for row in matrix]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"expected a {n}x{n} matrix")
    for row in rows:
        if not all(isinstance(entry, int) for entry in row):
            raise ValueError("matrix entries must be integers")
    det = _det(rows)
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (determinant {det})")
    adj = _adjugate(rows)
    inverse = [[entry * det for entry in row] for row in adj]  # 1/det == det for det = +-1

    def transform(p: LaurentPoly) -> LaurentPoly:
        out: dict[tuple[int, ...], GaussianRational] = {}
        for alpha, coefficient in p.terms.items():
            beta = tuple(sum(alpha[j] * inverse[j][k] for j in range(n)) for k in range(n))
            out[beta] = out.get(beta, GR_ZERO) + coefficient
        return LaurentPoly(n, out)

    transformed = [transform(p) for p in field.ps]
    new_ps = []
    for i in range(n):
        total = LaurentPoly.zero(n)
        for j in range(n):
            if rows[i][j]:
                total = total + transformed[j] * rows[i][j]
        new_ps.append(total)
    return VectorField(n, tuple(new_ps))


def canonical2(field: VectorField) -> Form2:
    """Extract the canonical (a1, a2, f, c1, c2) of a complete 2-torus field.

    Normalization: f has zero constant term (constants are absorbed into c1,
    c2) and (a1, a2) is the HNF lattice generator.  The defining identities
    are re-verified exactly before returning; a failure there is a bug.
    """
    if field.dim != 2:
        raise ValueError(f"canonical form is defined for dimension 2, got {field.dim}")
    certificate = decide_complete(field)
    if certificate.verdict is not Verdict.COMPLETE:
        raise ValueError("field is not complete; it has no canonical form")
    basis = hnf_basis(exponent_lattice(field))
    if basis.rank == 0:
        form = Form2(0, 0, LaurentPoly.zero(1), field.ps[0].constant_term(), -field.ps[1].constant_term())
    else:
        a1, a2 = primitive_rank1_generator(basis)
        coords1 = {alpha: coordinates(alpha, basis) for alpha in field.ps[0].support()}
        coords2 = {alpha: coordinates(alpha, basis) for alpha in field.ps[1].support()}
        f1 = field.ps[0].rewrite_in_basis(coords1, 1)
        f2 = field.ps[1].rewrite_in_basis(coords2, 1)
        c1 = f1.constant_term()
        c2 = -f2.constant_term()
        if a2 != 0:
            f = (f1 - c1) * (GaussianRational(1) / a2)
        else:
            # a1*f1 is the constant reduced polynomial, so f1 is constant and
            # f must be recovered from the second coordinate.
            f = -(f2 + c2) * (GaussianRational(1) / a1)
        form = Form2(a1, a2, f, c1, c2)
    if from_form2(form) != field:  # pragma: no cover - internal consistency guard
        raise RuntimeError("canonical form extraction failed its defining identities")
    return form


def from_form2(form: Form2) -> VectorField:
    """Build the 2-torus field with p1 = a2*f(W) + c1, p2 = -(a1*f(W) + c2),
    where W = z1^a1 z2^a2.  Every such field is complete.
    """
    composed = substitute_monomials(form.f, [(form.a1, form.a2)], 2)
    p1 = composed * form.a2 + LaurentPoly.constant(2, form.c1)
    p2 = -(composed * form.a1 + LaurentPoly.constant(2, form.c2))
    return VectorField(2, (p1, p2))
