"""Flow evaluation: closed forms for shallow reductions, numerics otherwise.

Complete fields whose reduction chain has length <= 1 and ends in constants
(this covers every canonical 2-torus field) integrate in closed form:

    w_i(t) = w_i(0) e^{K_i t}          (the rewritten coordinates)
    z_i(t) = z_i(0) exp(I_i(t)),       I_i(t) = integral of f_i(w(s)) ds,

where each monomial c*w^k of f_i contributes c*w(0)^k * (e^{<k,K>t}-1)/<k,K>
when <k,K> != 0 and c*w(0)^k * t in the resonant case.  The resonance test
is an exact Gaussian-rational dot product, never a float comparison.

Deeper chains need non-elementary integrals, so everything else goes through
an adaptive Dormand-Prince 5(4) integrator in logarithmic coordinates
u = log z, which keeps z away from 0 automatically and turns both torus
escape and genuine blow-up into |Re u| growth.  A collapsed step size or a
breach of the overflow guard is reported as blow-up with the time reached
along the requested ray; the two causes are deliberately not distinguished.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .field import Terminal, VectorField, Verdict, decide_complete, exponent_lattice
from .laurent import GaussianRational, LaurentPoly

RE_OVERFLOW_GUARD = 700.0  # |Re log z| beyond which exp overflows a double
STEP_FLOOR_FACTOR = 1e-13  # minimum step size relative to |t|


class IncompleteFieldError(ValueError):
    """The field is not complete, so it has no globally defined flow."""


class ChainTooDeepError(ValueError):
    """Reduction chain longer than 1: the flow is not elementary."""


class FlowStatus(enum.Enum):
    OK = "ok"
    BLOWUP = "blowup"


@dataclass(frozen=True)
class FlowResult:
    status: FlowStatus
    endpoint: tuple[complex, ...] | None
    t_star: complex | None
    steps: int
    min_step: float

    @property
    def ok(self) -> bool:
        return self.status is FlowStatus.OK


@dataclass(frozen=True)
class ExactTerm:
    coefficient: GaussianRational
    w_exponent: tuple[int, ...]
    rate: GaussianRational  # <k, K>, exact
    resonant: bool  # rate == 0 exactly


@dataclass(frozen=True)
class ExactFlow:
    """Closed-form flow data for a field with reduction chain length <= 1."""

    source: VectorField
    basis_rows: tuple[tuple[int, ...], ...]  # w_i = z^{row_i}; empty for rank 0
    rates: tuple[GaussianRational, ...]  # K_i of w_i' = K_i w_i
    integrands: tuple[tuple[ExactTerm, ...], ...]  # per coordinate, terms of f_i


def build_exact_flow(field: VectorField) -> ExactFlow:
    """Precompute the closed-form flow; exact construction, float-free.

    Requires the completeness certificate to have chain length <= 1 with the
    all-constant terminal.  Deeper chains raise ``ChainTooDeepError`` and
    must use ``integrate_numeric``.
    """
    certificate = decide_complete(field)
    if certificate.verdict is not Verdict.COMPLETE:
        raise IncompleteFieldError("field is not complete")
    if len(certificate.chain) > 1:
        raise ChainTooDeepError(
            f"reduction chain has length {len(certificate.chain)}; the flow is not elementary"
        )
    assert certificate.terminal is Terminal.BASE_CONSTANT
    if certificate.chain:
        step = certificate.chain[0]
        rows = step.basis.rows
        rates = tuple(q.constant_term() for q in step.reduced.ps)
        f_list = step.f_list
    else:
        rows = ()
        rates = ()
        f_list = tuple(LaurentPoly(0, {(): p.constant_term()}) for p in field.ps)
    integrands = []
    for f in f_list:
        terms = []
        for exponent, coefficient in f.sorted_terms():
            rate = GaussianRational()
            for k, rate_k in zip(exponent, rates):
                rate = rate + rate_k * k
            terms.append(ExactTerm(coefficient, exponent, rate, not rate))
        integrands.append(tuple(terms))
    return ExactFlow(field, rows, rates, tuple(integrands))


def _phi(rate: complex, t: complex) -> complex:
    """(e^{rate*t} - 1)/rate, series-guarded against cancellation near 0."""
    x = rate * t
    if abs(x) < 1e-4:
        return t * (1 + x / 2 + x * x / 6 + x * x * x / 24)
    return (cmath.exp(x) - 1) / rate


def _check_start(flow_dim: int, z0: Sequence[complex]) -> list[complex]:
    start = [complex(z) for z in z0]
    if len(start) != flow_dim:
        raise ValueError(f"start point has {len(start)} coordinates, expected {flow_dim}")
    if any(z == 0 for z in start):
        raise ValueError("start point has a zero coordinate")
    return start


def _w_values(rows: Sequence[tuple[int, ...]], z: Sequence[complex]) -> list[complex]:
    values = []
    for row in rows:
        w = 1 + 0j
        for zj, a in zip(z, row):
            if a >= 0:
                w *= zj**a
            else:
                w *= 1.0 / zj ** (-a)
        values.append(w)
    return values


def eval_exact(flow: ExactFlow, z0: Sequence[complex], t: complex) -> tuple[complex, ...]:
    """The time-t map z0 -> z(t) from the closed form."""
    start = _check_start(flow.source.dim, z0)
    t = complex(t)
    w0 = _w_values(flow.basis_rows, start)
    endpoint = []
    for z_start, terms in zip(start, flow.integrands):
        integral = 0j
        for term in terms:
            monomial = 1 + 0j
            for w, k in zip(w0, term.w_exponent):
                if k >= 0:
                    monomial *= w**k
                else:
                    monomial *= 1.0 / w ** (-k)
            if term.resonant:
                integral += complex(term.coefficient) * monomial * t
            else:
                integral += complex(term.coefficient) * monomial * _phi(complex(term.rate), t)
        endpoint.append(z_start * cmath.exp(integral))
    return tuple(endpoint)


def check_group_law(flow: ExactFlow, z0: Sequence[complex], s: complex, t: complex) -> float:
    """Max componentwise relative deviation of Phi_s(Phi_t(z0)) from Phi_{s+t}(z0)."""
    through = eval_exact(flow, eval_exact(flow, z0, t), s)
    direct = eval_exact(flow, z0, s + t)
    return max(
        abs(a - b) / abs(b) if b != 0 else abs(a - b)
        for a, b in zip(through, direct)
    ) if through else 0.0


def check_invariant_monomial(flow: ExactFlow, z0: Sequence[complex], t: complex) -> float:
    """Residual of w_i(Phi_t(z0)) against w_i(z0) e^{K_i t}; 0 for rank 0.

    In particular the monomial z^{a} is preserved exactly when its rate
    vanishes.
    """
    if not flow.basis_rows:
        return 0.0
    start = _check_start(flow.source.dim, z0)
    moved = eval_exact(flow, start, t)
    w_start = _w_values(flow.basis_rows, start)
    w_moved = _w_values(flow.basis_rows, moved)
    residual = 0.0
    for w1, w0, rate in zip(w_moved, w_start, flow.rates):
        expected = w0 * cmath.exp(complex(rate) * complex(t))
        deviation = abs(w1 - expected) / abs(expected) if expected != 0 else abs(w1 - expected)
        residual = max(residual, deviation)
    return residual


# -- adaptive Dormand-Prince 5(4) in log coordinates --------------------------

_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_ERR = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

_SAFETY = 0.9
_PI_ALPHA = 0.17
_PI_BETA = 0.04
_FAC_MIN = 0.2
_FAC_MAX = 10.0
_MAX_STEPS = 2_000_000


def _compile_log_rhs(field: VectorField) -> Callable[[Sequence[complex]], list[complex]]:
    """Compile u -> (p_i(e^u))_i; each monomial z^a becomes e^{<a, u>}."""
    monomials = sorted(exponent_lattice(field).generators)
    index = {alpha: i for i, alpha in enumerate(monomials)}
    per_poly = [
        [(index[alpha], complex(c)) for alpha, c in p.sorted_terms()]
        for p in field.ps
    ]

    def rhs(u: Sequence[complex]) -> list[complex]:
        values = [cmath.exp(sum(a * ui for a, ui in zip(alpha, u) if a)) for alpha in monomials]
        return [sum((c * values[i] for i, c in terms), 0j) for terms in per_poly]

    return rhs


def _error_norm(err: Sequence[complex], u: Sequence[complex], u_new: Sequence[complex], rtol: float, atol: float) -> float:
    if not err:
        return 0.0
    total = 0.0
    for e, a, b in zip(err, u, u_new):
        scale = atol + rtol * max(abs(a), abs(b))
        total += (abs(e) / scale) ** 2
    value = math.sqrt(total / len(err))
    return math.inf if value != value else value  # NaN -> reject hard


def integrate_numeric(
    field: VectorField,
    z0: Sequence[complex],
    t: complex,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> FlowResult:
    """Integrate along the straight ray from 0 to ``t`` in log coordinates.

    Returns Ok with the endpoint, or blow-up with the complex time reached
    when the step size collapses below ``STEP_FLOOR_FACTOR * |t|`` or some
    |Re log z_i| breaches the overflow guard.
    """
    if rtol <= 0 or atol <= 0:
        raise ValueError("tolerances must be positive")
    start = _check_start(field.dim, z0)
    t = complex(t)
    length = abs(t)
    if length == 0.0 or field.dim == 0:
        return FlowResult(FlowStatus.OK, tuple(start), None, 0, 0.0)
    direction = t / length
    rhs = _compile_log_rhs(field)

    def slope(u: Sequence[complex]) -> list[complex]:
        return [direction * v for v in rhs(u)]

    u = [cmath.log(z) for z in start]
    floor = STEP_FLOOR_FACTOR * length
    n = field.dim

    def ray_time(s: float) -> complex:
        return s * direction

    try:
        f_now = slope(u)
    except OverflowError:
        return FlowResult(FlowStatus.BLOWUP, None, ray_time(0.0), 0, 0.0)
    h = _initial_step(slope, u, f_now, length, rtol, atol)

    s = 0.0
    steps = 0
    min_step = math.inf
    error_old = 1e-4
    rejected = False
    for _ in range(_MAX_STEPS):
        if s >= length:
            endpoint = tuple(cmath.exp(ui) for ui in u)
            return FlowResult(FlowStatus.OK, endpoint, None, steps, min_step if steps else 0.0)
        h = min(h, length - s)
        if h < floor:
            return FlowResult(FlowStatus.BLOWUP, None, ray_time(s), steps, min_step if steps else 0.0)
        try:
            k = [f_now]
            for stage in range(1, 7):
                u_stage = [
                    ui + h * sum(aij * k[j][idx] for j, aij in enumerate(_DP_A[stage]))
                    for idx, ui in enumerate(u)
                ]
                k.append(slope(u_stage))
            u_new = [
                ui + h * sum(b * k[j][idx] for j, b in enumerate(_DP_B5) if b)
                for idx, ui in enumerate(u)
            ]
            err_vec = [h * sum(e * k[j][idx] for j, e in enumerate(_DP_ERR) if e) for idx in range(n)]
            error = _error_norm(err_vec, u, u_new, rtol, atol)
        except OverflowError:
            error = math.inf
            u_new = u
        if error <= 1.0:
            s += h
            u = u_new
            f_now = k[6]  # FSAL: last stage is the slope at the accepted point
            steps += 1
            min_step = min(min_step, h)
            if any(abs(ui.real) > RE_OVERFLOW_GUARD for ui in u):
                return FlowResult(FlowStatus.BLOWUP, None, ray_time(s), steps, min_step)
            factor = _SAFETY * (error**-_PI_ALPHA if error > 0 else _FAC_MAX) * error_old**_PI_BETA
            factor = min(1.0 if rejected else _FAC_MAX, max(_FAC_MIN, factor))
            error_old = max(error, 1e-4)
            rejected = False
            h *= factor
        else:
            shrink = _SAFETY * error**-_PI_ALPHA if math.isfinite(error) else 0.1
            h *= max(0.1, min(1.0, shrink))
            rejected = True
    raise RuntimeError("integrator exceeded the step budget")  # pragma: no cover


def _initial_step(
    slope: Callable[[Sequence[complex]], list[complex]],
    u: Sequence[complex],
    f0: Sequence[complex],
    length: float,
    rtol: float,
    atol: float,
) -> float:
    """Standard two-probe starting step-size heuristic."""
    scale = [atol + rtol * abs(ui) for ui in u]
    d0 = math.sqrt(sum((abs(ui) / sc) ** 2 for ui, sc in zip(u, scale)) / len(u))
    d1 = math.sqrt(sum((abs(fi) / sc) ** 2 for fi, sc in zip(f0, scale)) / len(u))
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, length)
    try:
        u1 = [ui + h0 * fi for ui, fi in zip(u, f0)]
        f1 = slope(u1)
        d2 = math.sqrt(sum((abs(a - b) / sc) ** 2 for a, b, sc in zip(f1, f0, scale)) / len(u)) / h0
    except OverflowError:
        return max(h0 * 1e-3, STEP_FLOOR_FACTOR * length * 10)
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, length)
