"""Exact sparse Laurent-polynomial arithmetic over the Gaussian rationals.

A Laurent polynomial in ``n`` variables is a finite map from integer exponent
vectors (tuples of length ``n``, negative entries allowed) to nonzero
Gaussian-rational coefficients.  The zero polynomial is the empty map, and the
map is kept canonical, so structural equality coincides with mathematical
equality.

Coefficients are Gaussian rationals (rational real and imaginary parts)
rather than floats: the completeness decision hinges on exact cancellation
when integer combinations of rewritten polynomials are formed, and a single
rounded coefficient can flip a verdict.

Everything here is immutable after construction; all operations are pure and
return new values, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]

CoefficientLike = Union["GaussianRational", Fraction, int]


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts.

    ``Fraction`` already stores each part reduced with a positive
    denominator, so equality and zero-testing are exact and canonical.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(value: CoefficientLike) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other: CoefficientLike) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: CoefficientLike) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: CoefficientLike) -> "GaussianRational":
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: CoefficientLike) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: CoefficientLike) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def magnitude_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        if not self:
            return "0"
        if self.im == 0:
            return _format_fraction(self.re)
        if self.re == 0:
            return _format_imaginary(self.im)
        return _format_fraction(self.re) + ("+" if self.im > 0 else "-") + _format_imaginary(abs(self.im))

    __repr__ = __str__


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1))


def _format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _format_imaginary(x: Fraction) -> str:
    mag = abs(x)
    body = "i" if mag == 1 else _format_fraction(mag) + "i"
    return body if x > 0 else "-" + body


def graded_lex_key(exponent: Exponent) -> tuple:
    """Sort key: total degree first, then lexicographic on the entries."""
    return (sum(exponent), exponent)


class LaurentPoly:
    """Sparse Laurent polynomial with exact Gaussian-rational coefficients.

    ``dim`` is stored even for the zero polynomial so that dimension checks
    never pass vacuously.  No stored coefficient is zero.
    """

    __slots__ = ("dim", "terms")

    def __init__(
        self,
        dim: int,
        terms: Mapping[Exponent, CoefficientLike] | Iterable[tuple[Exponent, CoefficientLike]] = (),
    ) -> None:
        if not isinstance(dim, int) or dim < 0:
            raise ValueError(f"dimension must be a nonnegative integer, got {dim!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        canonical: dict[Exponent, GaussianRational] = {}
        for exponent, coefficient in items:
            key = tuple(exponent)
            if len(key) != dim:
                raise ValueError(f"exponent {key} has length {len(key)}, expected {dim}")
            if not all(isinstance(e, int) for e in key):
                raise ValueError(f"exponent {key} has non-integer entries")
            value = GaussianRational.coerce(coefficient)
            if key in canonical:
                value = canonical[key] + value
            if value:
                canonical[key] = value
            elif key in canonical:
                del canonical[key]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value: CoefficientLike) -> "LaurentPoly":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def monomial(cls, dim: int, exponent: Sequence[int], coefficient: CoefficientLike = 1) -> "LaurentPoly":
        return cls(dim, {tuple(exponent): coefficient})

    @classmethod
    def variable(cls, dim: int, axis: int) -> "LaurentPoly":
        if not 0 <= axis < dim:
            raise ValueError(f"axis {axis} out of range for dimension {dim}")
        exponent = [0] * dim
        exponent[axis] = 1
        return cls(dim, {tuple(exponent): 1})

    # -- ring structure ----------------------------------------------------

    def _check_dim(self, other: "LaurentPoly") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} != {other.dim}")

    def _coerce_operand(self, other: object) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return LaurentPoly.constant(self.dim, other)
        return None

    def __add__(self, other: object) -> "LaurentPoly":
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        self._check_dim(o)
        out = dict(self.terms)
        for exponent, coefficient in o.terms.items():
            out[exponent] = out.get(exponent, GR_ZERO) + coefficient
        return LaurentPoly(self.dim, out)

    __radd__ = __add__

    def __sub__(self, other: object) -> "LaurentPoly":
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "LaurentPoly":
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.dim, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: object) -> "LaurentPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            scalar = GaussianRational.coerce(other)
            return LaurentPoly(self.dim, {e: c * scalar for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_dim(other)
        out: dict[Exponent, GaussianRational] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, GR_ZERO) + ca * cb
        return LaurentPoly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("only nonnegative integer powers are defined")
        result = LaurentPoly.constant(self.dim, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    def is_constant(self) -> bool:
        """True iff the support is contained in {0-vector}."""
        return not self.terms or set(self.terms) == {(0,) * self.dim}

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.dim, GR_ZERO)

    def support(self) -> frozenset[Exponent]:
        return frozenset(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, GaussianRational]]:
        """Terms in graded-lex order: total degree first, then lexicographic."""
        return sorted(self.terms.items(), key=lambda item: graded_lex_key(item[0]))

    # -- calculus and evaluation --------------------------------------------

    def euler_derivative(self, axis: int) -> "LaurentPoly":
        """The logarithmic derivative z_axis * d/dz_axis, term by term.

        Each term c*Z^a maps to (a[axis]*c)*Z^a, so the result is again a
        Laurent polynomial (no negative-degree fallout).
        """
        if not 0 <= axis < self.dim:
            raise ValueError(f"axis {axis} out of range for dimension {self.dim}")
        return LaurentPoly(self.dim, {e: c * e[axis] for e, c in self.terms.items()})

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Evaluate at a point with all coordinates nonzero.

        Negative exponents are evaluated as exact reciprocals of positive
        powers, so the only failure mode is a zero coordinate.
        """
        if len(point) != self.dim:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.dim}")
        values = [complex(z) for z in point]
        if any(z == 0 for z in values):
            raise ValueError("evaluation point has a zero coordinate")
        total = 0j
        for exponent, coefficient in self.terms.items():
            factor = complex(coefficient)
            for z, e in zip(values, exponent):
                if e >= 0:
                    factor *= z**e
                else:
                    factor *= 1.0 / z ** (-e)
            total += factor
        return total

    # -- monomial rewriting --------------------------------------------------

    def rewrite_in_basis(self, coords: Mapping[Exponent, Sequence[int]], new_dim: int) -> "LaurentPoly":
        """Rewrite each term c*Z^a as c*W^{coords[a]} in ``new_dim`` variables.

        ``coords`` must cover the whole support.  Colliding images are summed
        exactly (they only arise from a non-injective coordinate map).
        """
        out: dict[Exponent, GaussianRational] = {}
        for exponent, coefficient in self.terms.items():
            if exponent not in coords:
                raise ValueError(f"missing coordinate entry for exponent {exponent}")
            image = tuple(coords[exponent])
            if len(image) != new_dim:
                raise ValueError(f"coordinate vector {image} has length {len(image)}, expected {new_dim}")
            out[image] = out.get(image, GR_ZERO) + coefficient
        return LaurentPoly(new_dim, out)

    def __str__(self) -> str:
        return poly_to_text(self, default_variable_names(self.dim))

    def __repr__(self) -> str:
        return f"<LaurentPoly {self}>"


def substitute_monomials(p: LaurentPoly, images: Sequence[Exponent], new_dim: int) -> LaurentPoly:
    """Substitute variable i of ``p`` by the monomial Z^{images[i]}.

    Each term c*W^k becomes c*Z^{sum_i k_i * images[i]}; this is the inverse
    direction of ``rewrite_in_basis`` when the images are a lattice basis.
    """
    if len(images) != p.dim:
        raise ValueError(f"expected {p.dim} monomial images, got {len(images)}")
    rows = [tuple(image) for image in images]
    for row in rows:
        if len(row) != new_dim:
            raise ValueError(f"monomial image {row} has length {len(row)}, expected {new_dim}")
    out: dict[Exponent, GaussianRational] = {}
    for exponent, coefficient in p.terms.items():
        target = [0] * new_dim
        for k, row in zip(exponent, rows):
            if k:
                for j, a in enumerate(row):
                    target[j] += k * a
        key = tuple(target)
        out[key] = out.get(key, GR_ZERO) + coefficient
    return LaurentPoly(new_dim, out)


def default_variable_names(dim: int) -> list[str]:
    return [f"z{i + 1}" for i in range(dim)]


def poly_to_text(p: LaurentPoly, names: Sequence[str]) -> str:
    """Canonical text form: graded-lex term order, exact coefficients.

    The output is accepted verbatim by the expression parser, and identical
    polynomials always print identically.
    """
    if len(names) != p.dim:
        raise ValueError(f"expected {p.dim} variable names, got {len(names)}")
    if not p.terms:
        return "0"
    pieces: list[str] = []
    for exponent, coefficient in p.sorted_terms():
        monomial = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, exponent)
            if e != 0
        )
        sign, coefficient_text = _coefficient_text(coefficient, bool(monomial))
        if coefficient_text and monomial:
            body = f"{coefficient_text}*{monomial}"
        else:
            body = coefficient_text or monomial
        if not pieces:
            pieces.append(("-" if sign < 0 else "") + body)
        else:
            pieces.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(pieces)


def _coefficient_text(c: GaussianRational, has_monomial: bool) -> tuple[int, str]:
    """Split a coefficient into a sign for the term joiner and literal text."""
    if c.im == 0:
        sign = 1 if c.re > 0 else -1
        magnitude = abs(c.re)
        if magnitude == 1 and has_monomial:
            return sign, ""
        return sign, _format_fraction(magnitude)
    if c.re == 0:
        sign = 1 if c.im > 0 else -1
        magnitude = abs(c.im)
        return sign, ("i" if magnitude == 1 else _format_fraction(magnitude) + "i")
    # Mixed real/imaginary literals keep their signs inside parentheses.
    return 1, f"({c})"
