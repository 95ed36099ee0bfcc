"""The mollified-moment constant c(P,Q,R,theta), the kappa lower bound,
its shifted two-variable generalization, and the registry of published
polynomial tuples.

The closed-form path expands the differentiated integrand into products
of one-dimensional integrals; exponential-monomial integrals use a
recurrence that runs upward for well-separated arguments and downward
(self-correcting) for small ones.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import AccuracyError, ConstraintError, DomainError
from .mollifier import Polynomial


@dataclass(frozen=True)
class LevinsonParams:
    p_poly: Polynomial
    q_poly: Polynomial
    r_shift: float
    theta: float

    def __post_init__(self):
        if abs(self.p_poly(0.0)) > 1e-12:
            raise ConstraintError("P(0)=0 violated")
        if abs(self.p_poly(1.0) - 1.0) > 1e-12:
            raise ConstraintError("P(1)=1 violated")
        if abs(self.q_poly(0.0) - 1.0) > 1e-12:
            raise ConstraintError("Q(0)=1 violated")
        if not self.r_shift >= 0.0:
            raise ConstraintError("R must be nonnegative")
        if not 0.0 < self.theta <= 0.5:
            raise ConstraintError("theta must lie in (0, 1/2]")


def exp_monomial_integral(a: complex, m: int) -> complex:
    """I_m(a) = integral over [0,1] of e^{a v} v^m dv.

    Upward recurrence I_m = (e^a - m I_{m-1}) / a is stable for |a| not
    small; below |a| = 1/2 the downward form I_{m-1} = (e^a - a I_m) / m
    from a crude seed contracts the seed error by m!/(M! a^{m-M}).
    """
    if m < 0:
        raise DomainError("monomial degree must be nonnegative")
    a = complex(a)
    if a == 0:
        return 1.0 / (m + 1)
    ea = cmath.exp(a)
    # upward amplifies rounding by about m!/|a|^m, so it is reserved for
    # |a| comfortably above the degree
    if abs(a) >= max(0.5, float(m)):
        val = (ea - 1.0) / a
        for k in range(1, m + 1):
            val = (ea - k * val) / a
        return val
    top = m + 40 + int(2.0 * abs(a))
    val = ea / (top + 1.0)  # any O(1/top) seed works; errors die downward
    for k in range(top, m, -1):
        val = (ea - a * val) / k
    return val


def _poly_product_integral(p: Polynomial, q: Polynomial) -> float:
    """Integral over [0,1] of p(u) q(u) du, exact rational-coefficient path."""
    conv = np.convolve(p.coefficients, q.coefficients)
    return math.fsum(c / (k + 1) for k, c in enumerate(conv))


def c_constant_exact(params: LevinsonParams) -> float:
    """Closed-form c(P,Q,R,theta).

    The inner x-derivative at x=0 is R theta P(u)Q(v) + P'(u)Q(v)
    + theta P(u)Q'(v); each term splits into a u-integral of a polynomial
    and a v-integral against e^{2Rv}.
    """
    p, q, r, theta = params.p_poly, params.q_poly, params.r_shift, params.theta
    a = 2.0 * r
    int_p = p.integral_01()
    int_p_prime = p(1.0) - p(0.0)
    int_q = sum(c * exp_monomial_integral(a, m).real for m, c in enumerate(q.coefficients))
    q_prime = q.derivative()
    int_q_prime = sum(
        c * exp_monomial_integral(a, m).real for m, c in enumerate(q_prime.coefficients)
    )
    return 1.0 + (1.0 / theta) * (
        r * theta * int_p * int_q + int_p_prime * int_q + theta * int_p * int_q_prime
    )


def c_constant_quadrature(params: LevinsonParams, tol: float = 1e-10) -> float:
    """Adaptive-quadrature oracle for the same double integral.

    The inner x-derivative is taken by a fourth-order five-point central
    difference; the second-order h=1e-6 stencil loses too much to
    rounding against the 1e-9 cross-path agreement this must support.
    """
    if tol < 1e-12:
        raise DomainError("tolerance below 1e-12 is not certifiable here")
    p, q, r, theta = params.p_poly, params.q_poly, params.r_shift, params.theta
    h = 1e-3
    stencil = (1.0, -8.0, 8.0, -1.0)
    offsets = (-2.0 * h, -h, h, 2.0 * h)

    def integrand(u, v):
        acc = 0.0
        for w, x in zip(stencil, offsets):
            acc += w * math.exp(r * theta * x) * p(x + u) * q(v + theta * x)
        return math.exp(2.0 * r * v) * acc / (12.0 * h)

    value, err = integrate.dblquad(integrand, 0.0, 1.0, 0.0, 1.0, epsabs=tol, epsrel=tol)
    if err > max(tol, 1e-9) * 10.0:
        raise AccuracyError(f"quadrature error estimate {err:.3e} exceeds tolerance")
    return 1.0 + value / theta


def kappa_lower_bound(c_value: float, r_shift: float) -> float:
    """kappa >= 1 - log(c)/R."""
    if c_value < 1.0:
        raise DomainError("c below 1 would push the bound past 1; upstream bug")
    if r_shift <= 0.0:
        raise DomainError("R must be positive")
    return 1.0 - math.log(c_value) / r_shift


@dataclass(frozen=True)
class ShiftedParams:
    alpha: complex
    beta: complex
    m_length: float
    t_scale: float

    def __post_init__(self):
        log_t = math.log(self.t_scale)
        if abs(complex(self.alpha)) > 10.0 / log_t or abs(complex(self.beta)) > 10.0 / log_t:
            raise DomainError("shifts must stay within 10 / log T")
        if self.m_length < 1.0 or self.t_scale <= 1.0:
            raise DomainError("need M >= 1 and T > 1")


def shifted_c(shift: ShiftedParams, p_poly: Polynomial, theta: float) -> complex:
    """Two-variable shifted constant c(alpha, beta).

    The mixed derivative of M^{-beta x - alpha y} G(x, y) at the origin
    yields alpha beta log^2 M times the P-square integral, minus
    (alpha + beta) log M times the P P' integral, plus the P'-square
    integral, all weighted by the v-integral of T^{-v(alpha+beta)}.
    """
    if not 0.0 < theta <= 0.5:
        raise DomainError("theta must lie in (0, 1/2]")
    a, b = complex(shift.alpha), complex(shift.beta)
    log_m = math.log(shift.m_length)
    log_t = math.log(shift.t_scale)
    iv = exp_monomial_integral(-(a + b) * log_t, 0)
    p_prime = p_poly.derivative()
    pp = _poly_product_integral(p_poly, p_poly)
    ppd = _poly_product_integral(p_poly, p_prime)
    pdpd = _poly_product_integral(p_prime, p_prime)
    return 1.0 + (iv / theta) * (a * b * log_m**2 * pp - (a + b) * log_m * ppd + pdpd)


def _fornberg_weights(grid: np.ndarray, order: int) -> np.ndarray:
    """Finite-difference weights for the order-th derivative at 0."""
    n = grid.size
    c = np.zeros((n, order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = grid[0]
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = grid[i]
        for j in range(i):
            c3 = grid[i] - grid[j]
            c2 *= c3
            if j == i - 1:
                # row i must read row i-1 before that row is rescaled
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def apply_q_operators(
    params: LevinsonParams, t_scale: float, step_scale: float = 0.2
) -> complex:
    """Q(-(1/L) d/d alpha) Q(-(1/L) d/d beta) applied to the shifted
    constant at alpha = beta = -R/L, by central finite-difference stencils.

    Step is step_scale / log T; the stencil is widened past five points
    when deg Q needs it.
    """
    q = params.q_poly
    log_t = math.log(t_scale)
    h = step_scale / log_t
    deg = q.degree
    half = max(2, (deg + 2) // 2 + 1)
    grid = h * np.arange(-half, half + 1, dtype=float)
    # operator coefficients: sum_j q_j (-1/L)^j d^j
    weights = np.zeros(grid.size)
    for j, q_j in enumerate(q.coefficients):
        weights += q_j * (-1.0 / log_t) ** j * _fornberg_weights(grid, j)
    base = -params.r_shift / log_t
    m_length = t_scale**params.theta
    total = 0.0 + 0.0j
    for i, da in enumerate(grid):
        for j, db in enumerate(grid):
            shift = ShiftedParams(base + da, base + db, m_length, t_scale)
            total += weights[i] * weights[j] * shifted_c(shift, params.p_poly, params.theta)
    return total


@dataclass(frozen=True)
class PublishedTuple:
    """A published (P or P1/P2/P, Q, R) choice with its claimed bound."""

    name: str
    q_poly: Polynomial
    r_shift: float
    claimed_bound: float
    source: str
    p_poly: Polynomial | None = None
    p1_poly: Polynomial | None = None
    p2_poly: Polynomial | None = None
    claimed_c: float | None = None
    not_reproducible_here: bool = False


def published_tuples() -> list[PublishedTuple]:
    """The baseline tuple and the two refined two-piece tuples.

    The refined tuples optimize a functional whose main term is not
    assembled in this package, so their claimed bounds carry the
    not_reproducible_here flag; polynomial text is kept verbatim in the
    source field.
    """
    baseline = PublishedTuple(
        name="baseline",
        p_poly=Polynomial((0.0, 1.0)),
        q_poly=Polynomial((1.0, -1.0)),
        r_shift=1.3,
        claimed_bound=0.35,
        claimed_c=2.35,
        source="P(x)=x, Q(x)=1-x, R=1.3, theta=0.5",
    )
    # Q(x)=1-0.642x-1.227(x^2/2-x^3/3)-5.178(x^3/3-x^4/2+x^5/5)
    q_kappa = Polynomial(
        (
            1.0,
            -0.642,
            -1.227 / 2.0,
            1.227 / 3.0 - 5.178 / 3.0,
            5.178 / 2.0,
            -5.178 / 5.0,
        )
    )
    # P1(x)=x-0.617x(1-x)-0.125x^2(1-x)-0.148x^3(1-x)
    p1_kappa = Polynomial((0.0, 1.0 - 0.617, 0.617 - 0.125, 0.125 - 0.148, 0.148))
    kappa_tuple = PublishedTuple(
        name="two-piece-kappa",
        p1_poly=p1_kappa,
        p2_poly=Polynomial((0.0, 1.0)),
        p_poly=Polynomial((0.0, 1.55, -1.564, 0.177)),
        q_poly=q_kappa,
        r_shift=1.3,
        claimed_bound=0.4172,
        not_reproducible_here=True,
        source=(
            "Q(x)=1-0.642x-1.227(x^2/2-x^3/3)-5.178(x^3/3-x^4/2+x^5/5), "
            "P1(x)=x-0.617x(1-x)-0.125x^2(1-x)-0.148x^3(1-x), P2(x)=x, "
            "P(x)=1.55x-1.564x^2+0.177x^3, R=1.3"
        ),
    )
    p1_star = Polynomial((0.0, 1.0 - 0.525, 0.525 - 0.183, 0.183 - 0.085, 0.085))
    star_tuple = PublishedTuple(
        name="two-piece-kappa-star",
        p1_poly=p1_star,
        p2_poly=Polynomial((0.0, 1.0)),
        p_poly=Polynomial((0.0, 0.838, -0.938, -0.084)),
        q_poly=Polynomial((1.0, -1.032)),
        r_shift=1.116,
        claimed_bound=0.4074,
        not_reproducible_here=True,
        source=(
            "Q(x)=1-1.032x, P1(x)=x-0.525x(1-x)-0.183x^2(1-x)-0.085x^3(1-x), "
            "P2(x)=x, P(x)=0.838x-0.938x^2-0.084x^3, R=1.116"
        ),
    )
    return [baseline, kappa_tuple, star_tuple]


def discrepancy_note(computed_c: float, claimed_c: float, window: float = 0.12) -> str | None:
    """Flag a computed constant that drifts past the window around a claim."""
    gap = abs(computed_c - claimed_c)
    if gap <= window:
        return None
    return (
        f"computed c={computed_c:.9f} differs from the published claim "
        f"{claimed_c} by {gap:.4f} (> {window}); the published value likely "
        "tracks a variant normalization and is reported, not patched"
    )
