"""Riemann zeta with analytic continuation, the completed xi function,
Hardy's Z, critical-line zero scanning, and the shifted approximate
functional equation for the product of two zeta values.

The single zeta engine is Euler-Maclaurin summation with Bernoulli
corrections; reflection handles Re(s) < 0.  Derivatives come from Cauchy
circles for point queries and from truncated-Taylor (jet) propagation for
bulk line evaluation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sps

from .errors import ConditioningError, DomainError, PoleError

_EM_TERMS = 14
_BERNOULLI = sps.bernoulli(2 * _EM_TERMS)
# B_{2k} / (2k)! for k = 1 .. _EM_TERMS
_EM_COEFF = np.array(
    [_BERNOULLI[2 * k] / math.factorial(2 * k) for k in range(1, _EM_TERMS + 1)]
)


# ---------------------------------------------------------------------------
# jets: truncated Taylor expansions in the shift x, stored as coefficient
# rows f^{(j)}/j! of shape (order+1, n_points)


def _jet_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    order = a.shape[0] - 1
    out = np.zeros_like(a)
    for j in range(order + 1):
        for i in range(j + 1):
            out[j] += a[i] * b[j - i]
    return out


def _jet_mul_linear(a: np.ndarray, s: np.ndarray, c: float) -> np.ndarray:
    """Multiply jet a by the linear factor (s + x + c)."""
    out = a * (s + c)
    out[1:] += a[:-1]
    return out


def _power_jet(base_pow: np.ndarray, log_base: float, order: int) -> np.ndarray:
    """Jet of base^{-s-x} given base^{-s}: coefficients (-log base)^j / j!."""
    out = np.empty((order + 1,) + base_pow.shape, dtype=complex)
    coeff = 1.0
    for j in range(order + 1):
        out[j] = base_pow * coeff
        coeff *= -log_base / (j + 1)
    return out


def zeta_line(
    sigma: float,
    t: np.ndarray,
    order: int = 0,
    factor: float = 1.0,
    chunk: int = 256,
    nblock: int = 8192,
) -> np.ndarray:
    """Euler-Maclaurin jets of zeta along a horizontal line.

    Returns an array of shape (order+1, len(t)) whose j-th row holds
    zeta^{(j)}(sigma + i t) / j!.  The truncation point N grows with |t|
    (N >= factor * |t|), which keeps the Bernoulli tail below 1e-12 for
    factor >= 1 with the 14 correction terms used here.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty((order + 1, t.size), dtype=complex)
    # process in chunks ordered by |t| so each chunk shares one N
    idx = np.argsort(np.abs(t), kind="stable")
    for c0 in range(0, t.size, chunk):
        sel = idx[c0 : c0 + chunk]
        tc = t[sel]
        s = sigma + 1j * tc
        n_cut = max(20, int(math.ceil(factor * np.abs(tc).max())))
        jets = np.zeros((order + 1, tc.size), dtype=complex)
        # main sum over n < N in blocks, all derivative orders share the
        # oscillatory matrix E
        for b0 in range(1, n_cut, nblock):
            n = np.arange(b0, min(b0 + nblock, n_cut), dtype=float)
            ln = np.log(n)
            e_mat = np.exp(-1j * np.outer(tc, ln))
            w = np.empty((n.size, order + 1))
            w[:, 0] = n**-sigma
            for j in range(1, order + 1):
                w[:, j] = w[:, j - 1] * (-ln) / j
            jets += (e_mat @ w).T
        big_n = float(n_cut)
        log_n = math.log(big_n)
        n_pow = big_n**-sigma * np.exp(-1j * tc * log_n)
        pow_jet = _power_jet(n_pow, log_n, order)  # N^{-s-x} jet
        # half term
        jets += 0.5 * pow_jet
        # pole term N^{1-s-x}/(s+x-1)
        inv = np.empty_like(pow_jet)
        base = 1.0 / (s - 1.0)
        acc = base.copy()
        for j in range(order + 1):
            inv[j] = acc if j % 2 == 0 else -acc
            acc = acc * base
        jets += big_n * _jet_mul(pow_jet, inv)
        # Bernoulli corrections
        poch = np.zeros_like(pow_jet)
        poch[0] = s
        if order >= 1:
            poch[1] = 1.0
        scale = 1.0 / big_n
        for k in range(1, _EM_TERMS + 1):
            jets += _EM_COEFF[k - 1] * scale * _jet_mul(poch, pow_jet)
            poch = _jet_mul_linear(poch, s, 2.0 * k - 1.0)
            poch = _jet_mul_linear(poch, s, 2.0 * k)
            scale /= big_n * big_n
        out[:, sel] = jets
    return out


def _log_sin(z: complex) -> complex:
    if z.imag > 20.0:
        return -1j * z - cmath.log(-2j) + complex(np.log1p(-cmath.exp(2j * z)))
    if z.imag < -20.0:
        return 1j * z - cmath.log(2j) + complex(np.log1p(-cmath.exp(-2j * z)))
    return cmath.log(cmath.sin(z))


def zeta(s: complex) -> complex:
    """zeta(s) for any complex s != 1.

    Re(s) >= 0: Euler-Maclaurin with N ~ max(20, 3|Im s|); Re(s) < 0:
    reflection through the completed-xi functional equation.
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("zeta pole at s=1")
    if s.real >= 0.0:
        return complex(zeta_line(s.real, np.array([s.imag]), 0, factor=3.0)[0, 0])
    if s.imag == 0.0 and s.real < 0 and s.real == round(s.real) and int(s.real) % 2 == 0:
        return 0.0  # trivial zeros
    # zeta(s) = chi(s) zeta(1-s) with chi from xi(s) = xi(1-s)
    log_chi = (
        s * math.log(2.0)
        + (s - 1.0) * math.log(math.pi)
        + _log_sin(math.pi * s / 2.0)
        + sps.loggamma(1.0 - s)
    )
    return cmath.exp(complex(log_chi)) * zeta(1.0 - s)


def zeta_derivative(s: complex, order: int) -> complex:
    """zeta^{(order)}(s) by Cauchy-integral quadrature on a circle.

    The circle radius shrinks near the pole; evaluation closer than 1e-3
    to s=1 is refused as too ill-conditioned.
    """
    s = complex(s)
    if order < 0 or order > 8:
        raise DomainError("derivative order must be in 0..8")
    if abs(s - 1.0) < 1e-3:
        raise ConditioningError("zeta derivative too close to the pole at s=1")
    if order == 0:
        return zeta(s)
    radius = min(0.25, abs(s - 1.0) / 2.0)
    nodes = 64 * (order + 1)
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    ring = s + radius * np.exp(1j * theta)
    vals = np.array([zeta(w) for w in ring])
    coeff = np.exp(-1j * order * theta)
    return math.factorial(order) / (nodes * radius**order) * complex(np.sum(vals * coeff))


def xi_completed(s: complex, path: str = "direct") -> complex:
    """Completed xi(s); entire, symmetric about s = 1/2.

    path 'direct' multiplies the gamma/pi/zeta factors; path 'continued'
    sums the incomplete-gamma series, valid everywhere.
    """
    s = complex(s)
    if path == "direct":
        if s == 0.0 or s == 1.0:
            return complex(0.5)
        # s Gamma(s/2)/2 = Gamma(s/2 + 1) absorbs the s=0 pole
        return (s - 1.0) * cmath.exp(-s / 2.0 * math.log(math.pi)) * complex(
            sps.gamma(s / 2.0 + 1.0)
        ) * zeta(s)
    if path != "continued":
        raise DomainError(f"unknown xi path {path!r}")
    from .special import upper_incomplete_gamma

    pref = s * (s - 1.0) / 2.0
    total = complex(0.5)
    for n in range(1, 40):
        x = math.pi * n * n
        term = cmath.exp(-s / 2.0 * math.log(math.pi) - s * math.log(n)) * (
            upper_incomplete_gamma(s / 2.0, x)
        ) + cmath.exp((s - 1.0) / 2.0 * math.log(math.pi) + (s - 1.0) * math.log(n)) * (
            upper_incomplete_gamma((1.0 - s) / 2.0, x)
        )
        total += pref * term
        if n > 2 and abs(pref * term) < 1e-16 * max(1.0, abs(total)):
            break
    return total


def _hardy_phase(t: np.ndarray) -> np.ndarray:
    """Unit-modulus phase factor H(1/2+it)/|H(1/2+it)|."""
    s = 0.5 + 1j * np.asarray(t, dtype=float)
    log_h = np.log(s * (s - 1.0) / 2.0) - s / 2.0 * math.log(math.pi) + sps.loggamma(s / 2.0)
    return np.exp(1j * np.imag(log_h))


def hardy_z(t: float) -> float:
    """Hardy's Z(t): real-valued rotation of zeta on the critical line."""
    t = float(t)
    if abs(t) > 1e5:
        raise DomainError("hardy_z certified only for |t| <= 1e5")
    z = complex(_hardy_phase(np.array([t]))[0]) * zeta(0.5 + 1j * t)
    if abs(z.imag) >= 1e-6:
        raise ConditioningError(f"Z(t) imaginary residual {z.imag:.3e} signals accuracy loss")
    return z.real


def hardy_z_line(t: np.ndarray) -> np.ndarray:
    """Vectorized Z(t) for a grid of ordinates."""
    t = np.asarray(t, dtype=float)
    vals = _hardy_phase(t) * zeta_line(0.5, t, 0, factor=3.0)[0]
    bad = np.abs(vals.imag) >= 1e-6
    if np.any(bad):
        raise ConditioningError("Z grid evaluation lost accuracy")
    return vals.real


def zero_count_estimate(t_max: float) -> float:
    """Refined Riemann-von Mangoldt shape (T/2pi) log(T/2pi) - T/2pi."""
    if t_max <= 0:
        return 0.0
    u = t_max / (2.0 * math.pi)
    return u * math.log(u) - u


def zero_count_leading(t_max: float) -> float:
    """Leading-order estimate (T/2pi) log T."""
    if t_max <= 0:
        return 0.0
    return t_max / (2.0 * math.pi) * math.log(t_max)


@dataclass(frozen=True)
class ZeroScanReport:
    t_min: float
    t_max: float
    step: float
    zero_count: int
    zeros: tuple[float, ...]
    estimate_n_t: float
    step_warning: bool = False


def _bisect_zero(lo: float, hi: float, z_lo: float, tol: float = 1e-6) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        z_mid = hardy_z(mid)
        if z_mid == 0.0:
            return mid
        if (z_lo < 0) != (z_mid < 0):
            hi = mid
        else:
            lo, z_lo = mid, z_mid
    return 0.5 * (lo + hi)


def count_critical_zeros(t_min: float, t_max: float, step: float) -> ZeroScanReport:
    """Scan Z(t) on a grid, bisect every sign change to 1e-6.

    A step above 0.5 risks missing close zero pairs and is flagged in the
    report rather than rejected.
    """
    if t_min < 0 or t_max < t_min:
        raise DomainError("need 0 <= t_min <= t_max")
    if step <= 0:
        raise DomainError("step must be positive")
    warning = step > 0.5
    if t_max == t_min:
        return ZeroScanReport(t_min, t_max, step, 0, (), zero_count_estimate(t_max), warning)
    grid = np.arange(t_min, t_max + step * 0.5, step)
    if grid[-1] > t_max:
        grid[-1] = t_max
    z = hardy_z_line(grid)
    flips = np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
    zeros = tuple(_bisect_zero(grid[i], grid[i + 1], z[i]) for i in flips)
    return ZeroScanReport(
        t_min, t_max, step, len(zeros), zeros, zero_count_estimate(t_max), warning
    )


# ---------------------------------------------------------------------------
# approximate functional equation for zeta(1/2+a+it) zeta(1/2+b-it)


@dataclass(frozen=True)
class AfeParams:
    alpha: complex
    beta: complex
    t: float
    truncation_length: int = 0  # 0 means the default 10 t
    contour_height_cap: float = 40.0

    def __post_init__(self):
        if complex(self.alpha).real >= 0.5 or complex(self.beta).real >= 0.5:
            raise DomainError("shifts must satisfy Re(alpha), Re(beta) < 1/2")
        if self.t < 10.0:
            raise DomainError("afe assembly certified only for t >= 10")
        if self.truncation_length == 0:
            object.__setattr__(self, "truncation_length", int(10 * self.t))

    def _check_shift_sum(self):
        if complex(self.alpha) + complex(self.beta) == 0:
            raise DomainError(
                "alpha + beta = 0 degenerates the smoothing prefactor; "
                "use a small offset such as alpha + beta = 1e-6"
            )


def _afe_contour(cap: float):
    y_cut = min(float(cap), 14.0)  # exp(1 - y^2) is below 1e-80 past |y|=14
    nodes = 2 * int(200 * y_cut) + 1
    y = np.linspace(-y_cut, y_cut, nodes)
    s = 1.0 + 1j * y
    weights = np.full(nodes, y[1] - y[0])
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return s, weights


def _gamma_ratio_weight(s, a: complex, b: complex, t: float):
    return np.exp(
        -s * math.log(math.pi)
        + sps.loggamma((0.5 + a + s + 1j * t) / 2.0)
        + sps.loggamma((0.5 + b + s - 1j * t) / 2.0)
        - sps.loggamma((0.5 + a + 1j * t) / 2.0)
        - sps.loggamma((0.5 + b - 1j * t) / 2.0)
    )


def _afe_v_table(a: complex, b: complex, t: float, n_max: int, cap: float) -> np.ndarray:
    """V_{a,b}(x, t) for x = 1..n_max by contour quadrature.

    The quadratic prefactor in the smoothing function splits into the
    even kernel handled here plus an odd multiple of s whose summed
    contribution cancels exactly between the two assembled sums (up to
    residues of size exp(-t^2)); dropping it avoids a 1/(a+b)^2
    amplification that would destroy the conditioning of the assembly.
    """
    s, weights = _afe_contour(cap)
    kernel = np.exp(s * s) / s * _gamma_ratio_weight(s, a, b, t) * weights / (2.0 * math.pi)
    x = np.arange(1, n_max + 1, dtype=float)
    out = np.empty(n_max, dtype=complex)
    for b0 in range(0, n_max, 4096):
        blk = x[b0 : b0 + 4096]
        out[b0 : b0 + 4096] = np.exp(-np.outer(np.log(blk), s)) @ kernel
    return out


def afe_v_weight(x: float, params: AfeParams) -> complex:
    """Single V_{alpha,beta}(x, t) value (decay diagnostics)."""
    params._check_shift_sum()
    s, weights = _afe_contour(params.contour_height_cap)
    kernel = (
        np.exp(s * s)
        / s
        * _gamma_ratio_weight(s, complex(params.alpha), complex(params.beta), params.t)
        * weights
        / (2.0 * math.pi)
    )
    return complex(np.sum(kernel * np.exp(-s * math.log(x))))


def afe_x_factor(params: AfeParams) -> complex:
    """The gamma-ratio reflection factor multiplying the second sum."""
    a, b, t = complex(params.alpha), complex(params.beta), params.t
    return complex(
        np.exp(
            (a + b) * math.log(math.pi)
            + sps.loggamma((0.5 - a - 1j * t) / 2.0)
            + sps.loggamma((0.5 - b + 1j * t) / 2.0)
            - sps.loggamma((0.5 + a + 1j * t) / 2.0)
            - sps.loggamma((0.5 + b - 1j * t) / 2.0)
        )
    )


def afe_pair(params: AfeParams) -> complex:
    """Assemble the shifted approximate functional equation.

    Returns the truncated two-sum right-hand side approximating
    zeta(1/2+alpha+it) zeta(1/2+beta-it).
    """
    params._check_shift_sum()
    a, b, t = complex(params.alpha), complex(params.beta), params.t
    n_max = int(params.truncation_length)
    v_one = _afe_v_table(a, b, t, n_max, params.contour_height_cap)
    v_two = _afe_v_table(-b, -a, t, n_max, params.contour_height_cap)
    x_fac = afe_x_factor(params)
    total = 0.0 + 0.0j
    for m in range(1, n_max + 1):
        n = np.arange(1, n_max // m + 1, dtype=float)
        prod = (m * n).astype(int) - 1
        phase = np.exp(-1j * t * (math.log(m) - np.log(n)))
        total += np.sum(m ** (-0.5 - a) * n ** (-0.5 - b) * phase * v_one[prod])
        total += x_fac * np.sum(m ** (-0.5 + b) * n ** (-0.5 + a) * phase * v_two[prod])
    return complex(total)
