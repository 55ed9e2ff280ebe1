"""Shared samplers and independent oracles for the test suite.

The oracles here are deliberately dumber than the library: brute-force
integer-combination search for lattice membership, fraction-free elimination
for rank, closed-form solutions for flows.  They must stay independent of
the code paths they check.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from torusfield.field import Form2, VectorField, from_form2
from torusfield.flow import build_exact_flow, eval_exact
from torusfield.laurent import GaussianRational, LaurentPoly


def random_fraction(rng: random.Random, max_num: int, max_den: int) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_gaussian_rational(rng: random.Random, max_num: int = 4, max_den: int = 3) -> GaussianRational:
    return GaussianRational(random_fraction(rng, max_num, max_den), random_fraction(rng, max_num, max_den))


def random_laurent(
    rng: random.Random,
    dim: int,
    max_terms: int = 4,
    exp_bound: int = 3,
    max_num: int = 4,
    max_den: int = 3,
) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exponent = tuple(rng.randint(-exp_bound, exp_bound) for _ in range(dim))
        terms[exponent] = random_gaussian_rational(rng, max_num, max_den)
    return LaurentPoly(dim, terms)


def random_vector_field(
    rng: random.Random,
    dim: int,
    max_terms: int = 4,
    exp_bound: int = 3,
) -> VectorField:
    return VectorField(dim, tuple(random_laurent(rng, dim, max_terms, exp_bound) for _ in range(dim)))


def random_form2(
    rng: random.Random,
    deg_bound: int = 4,
    a_bound: int = 5,
    c_bound: int = 9,
    max_terms: int = 4,
) -> Form2:
    a1 = rng.randint(-a_bound, a_bound)
    a2 = rng.randint(-a_bound, a_bound)
    f_terms = {}
    for _ in range(rng.randint(0, max_terms)):
        k = rng.randint(-deg_bound, deg_bound)
        f_terms[(k,)] = GaussianRational(
            random_fraction(rng, c_bound, c_bound), random_fraction(rng, c_bound, c_bound)
        )
    c1 = GaussianRational(random_fraction(rng, c_bound, c_bound), random_fraction(rng, c_bound, c_bound))
    c2 = GaussianRational(random_fraction(rng, c_bound, c_bound), random_fraction(rng, c_bound, c_bound))
    return Form2(a1, a2, LaurentPoly(1, f_terms), c1, c2)


def random_normalized_form2(rng: random.Random, deg_bound: int = 4, a_bound: int = 5) -> Form2:
    """A Form2 whose parameters the canonical extraction reproduces exactly.

    Normalization: f has zero constant term and exponent gcd 1, and (a1, a2)
    is nonzero with positive leading entry, so it equals the HNF generator of
    the lattice of the generated field.  (The all-linear representative with
    a = (0, 0) and f = 0 is exercised separately.)
    """
    while True:
        a1 = rng.randint(-a_bound, a_bound)
        a2 = rng.randint(-a_bound, a_bound)
        if (a1, a2) == (0, 0):
            continue
        if a1 < 0 or (a1 == 0 and a2 < 0):
            a1, a2 = -a1, -a2
        exponents = {rng.choice([-1, 1])}  # exponent gcd 1, constant term excluded
        for _ in range(rng.randint(0, 3)):
            k = rng.randint(-deg_bound, deg_bound)
            if k != 0:
                exponents.add(k)
        f_terms = {}
        for k in exponents:
            coefficient = random_gaussian_rational(rng, 4, 4)
            if coefficient:
                f_terms[(k,)] = coefficient
        if not f_terms or math.gcd(*(k for (k,) in f_terms)) != 1:
            continue
        c1 = random_gaussian_rational(rng, 4, 4)
        c2 = random_gaussian_rational(rng, 4, 4)
        return Form2(a1, a2, LaurentPoly(1, f_terms), c1, c2)


def zero_rate_form2(rng: random.Random, deg_bound: int = 3) -> Form2:
    """A Form2 whose reduced rate a1*c1 - a2*c2 vanishes (shear-type field)."""
    while True:
        form = random_normalized_form2(rng, deg_bound=deg_bound, a_bound=3)
        if form.a1 == 0 or form.a2 == 0:
            continue
        gamma = random_gaussian_rational(rng, 2, 2)
        c1 = gamma * form.a2
        c2 = gamma * form.a1
        return Form2(form.a1, form.a2, form.f, c1, c2)


def representable_form2(rng: random.Random, times: tuple[complex, ...], bound: float = 50.0) -> Form2:
    """Rejection-sample Form2 fields whose flows stay in double range.

    Fields with a large reduced rate have |log z(t)| growing like
    e^{|rate| |t|}, which exceeds double precision long before the dynamics
    get interesting; those draws make an exact/numeric comparison undefined,
    so they are rejected by probing the closed form at the test times.
    """
    probes = [
        (1.0, 1.0),
        (complex(math.cos(0.7), math.sin(0.7)), complex(math.cos(-1.9), math.sin(-1.9))),
    ]
    while True:
        form = random_form2(rng, deg_bound=3, a_bound=3, c_bound=2, max_terms=3)
        flow = build_exact_flow(from_form2(form))
        ok = True
        try:
            for t in times:
                for z0 in probes:
                    endpoint = eval_exact(flow, z0, t)
                    if any(not (0 < abs(z) < math.exp(bound)) for z in endpoint):
                        ok = False
                        break
                if not ok:
                    break
        except OverflowError:
            ok = False
        if ok:
            return form


def random_unimodular(rng: random.Random, n: int, factors: int = 6, shear_bound: int = 2) -> list[list[int]]:
    """Product of at most ``factors`` elementary matrices (shears, swaps, sign flips)."""
    matrix = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    for _ in range(rng.randint(1, factors)):
        kind = rng.choice(["shear", "swap", "flip"])
        e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if kind == "shear" and n >= 2:
            i, j = rng.sample(range(n), 2)
            e[i][j] = rng.choice([k for k in range(-shear_bound, shear_bound + 1) if k])
        elif kind == "swap" and n >= 2:
            i, j = rng.sample(range(n), 2)
            e[i][i] = e[j][j] = 0
            e[i][j] = e[j][i] = 1
        else:
            i = rng.randrange(n)
            e[i][i] = -1
        matrix = matmul(matrix, e)
    return matrix


def rational_rank(rows: list[tuple[int, ...]]) -> int:
    """Rank over the rationals by exact Gaussian elimination (oracle)."""
    work = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                factor = work[i][col] / work[rank][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def brute_force_reachable(
    generators: list[tuple[int, ...]],
    dim: int,
    coeff_bound: int = 6,
    box: int = 4,
) -> set[tuple[int, ...]]:
    """All points of the box |entries| <= box reachable as integer combinations
    with coefficients in [-coeff_bound, coeff_bound] (meet-in-the-middle)."""
    half = len(generators) // 2
    left = _partial_sums(generators[:half], dim, coeff_bound)
    right = _partial_sums(generators[half:], dim, coeff_bound)
    reachable: set[tuple[int, ...]] = set()
    chunk = 512
    for start in range(0, len(left), chunk):
        sums = left[start : start + chunk, None, :] + right[None, :, :]
        flat = sums.reshape(-1, dim)
        mask = (np.abs(flat) <= box).all(axis=1)
        reachable.update(map(tuple, flat[mask].tolist()))
    return reachable


def _partial_sums(generators: list[tuple[int, ...]], dim: int, coeff_bound: int) -> np.ndarray:
    sums = np.zeros((1, dim), dtype=np.int64)
    coefficients = np.arange(-coeff_bound, coeff_bound + 1, dtype=np.int64)
    for g in generators:
        offsets = coefficients[:, None] * np.asarray(g, dtype=np.int64)[None, :]
        sums = (sums[:, None, :] + offsets[None, :, :]).reshape(-1, dim)
        sums = np.unique(sums, axis=0)
    return sums


def unit_shell_point(rng: random.Random, dim: int) -> tuple[complex, ...]:
    return tuple(
        complex(math.cos(theta), math.sin(theta))
        for theta in (rng.uniform(0, 2 * math.pi) for _ in range(dim))
    )
