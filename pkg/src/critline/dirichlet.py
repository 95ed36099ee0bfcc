"""Dirichlet characters, Gauss sums, theta series, and L-functions.

Characters are represented by exact phase exponents over the lcm of the
cyclic component orders, so conductor and parity computations are exact
integer tests rather than floating comparisons.  L-values use Hurwitz
zeta summation to the right of the critical strip and the completed
incomplete-gamma continuation elsewhere.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sps

from .errors import DomainError, PoleError
from .zeta import _EM_COEFF, _EM_TERMS, zeta


def _factor(q: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= q:
        if q % d == 0:
            e = 0
            while q % d == 0:
                q //= d
                e += 1
            out.append((d, e))
        d += 1
    if q > 1:
        out.append((q, 1))
    return out


def _primitive_root(p: int, e: int) -> int:
    """Primitive root modulo p^e for odd prime p."""
    phi_p = p - 1
    factors = [f for f, _ in _factor(phi_p)]
    g = 2
    while any(pow(g, phi_p // f, p) == 1 for f in factors):
        g += 1
    if e == 1:
        return g
    # a root mod p lifts to p^e unless g^(p-1) = 1 mod p^2
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _component_dlogs(q: int):
    """Cyclic decomposition of (Z/q)^*: per-component orders and dlog tables.

    Each table maps n (mod q, coprime to q) to the component exponent; the
    power-of-two part splits as {+-1} x <5> for 2^e with e >= 3.
    """
    orders: list[int] = []
    tables: list[np.ndarray] = []
    for p, e in _factor(q):
        pe = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                order = 2
                local = {1: 0, 3: 1}
                orders.append(order)
            else:
                half = pe // 4
                local_sign = {}
                local_five = {}
                val = 1
                for k in range(half):
                    local_sign[val] = 0
                    local_five[val] = k
                    local_sign[pe - val] = 1
                    local_five[pe - val] = k
                    val = val * 5 % pe
                orders.extend([2, half])
                for local in (local_sign, local_five):
                    tab = np.full(q, -1, dtype=np.int64)
                    for n in range(1, q, 2):
                        tab[n] = local[n % pe]
                    tables.append(tab)
                continue
        else:
            order = pe // p * (p - 1)
            g = _primitive_root(p, e)
            local = {}
            val = 1
            for k in range(order):
                local[val] = k
                val = val * g % pe
            orders.append(order)
        tab = np.full(q, -1, dtype=np.int64)
        for n in range(q):
            if math.gcd(n, q) == 1:
                tab[n] = local[n % pe]
        tables.append(tab)
    return orders, tables


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod q stored as exact phase exponents.

    phases[n] holds k with chi(n) = exp(2 pi i k / order_lcm), or -1 when
    gcd(n, q) > 1.
    """

    modulus: int
    order_lcm: int
    phases: np.ndarray = field(repr=False)
    index: int = 0

    def __call__(self, n):
        n = np.asarray(n) % self.modulus
        p = self.phases[n]
        val = np.where(p >= 0, np.exp(2j * np.pi * np.maximum(p, 0) / self.order_lcm), 0.0)
        return complex(val) if val.ndim == 0 else val

    def values(self) -> np.ndarray:
        return self(np.arange(self.modulus))

    @property
    def is_principal(self) -> bool:
        return bool(np.all(self.phases[self.phases >= 0] == 0))

    @property
    def parity(self) -> int:
        """0 for even characters (chi(-1)=1), 1 for odd."""
        if self.modulus <= 2:
            return 0
        return 0 if self.phases[self.modulus - 1] == 0 else 1

    @property
    def conductor(self) -> int:
        # least divisor d of q with chi trivial on units congruent to 1 mod d
        for d in _small_divisors(self.modulus):
            if _is_quasiperiod(self, d):
                return d
        return self.modulus

    @property
    def is_primitive(self) -> bool:
        if self.modulus == 1:
            return True
        return not self.is_principal and self.conductor == self.modulus

    def conjugate(self) -> "DirichletCharacter":
        conj = np.where(self.phases > 0, self.order_lcm - self.phases, self.phases)
        return DirichletCharacter(self.modulus, self.order_lcm, conj, self.index)


def _small_divisors(q: int) -> list[int]:
    divs = [1]
    for p, e in _factor(q):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _is_quasiperiod(chi: DirichletCharacter, d: int) -> bool:
    q = chi.modulus
    if q == 1:
        return True
    for a in range(1, q + 1, d):
        n = a % q
        if n != 1 and chi.phases[n] >= 0 and chi.phases[n] != 0:
            return False
    return True


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, principal first."""
    if q < 1:
        raise DomainError("modulus must be positive")
    if q == 1:
        return [DirichletCharacter(1, 1, np.zeros(1, dtype=np.int64), 0)]
    orders, tables = _component_dlogs(q)
    lcm = 1
    for o in orders:
        lcm = math.lcm(lcm, o)
    coprime = np.array([math.gcd(n, q) == 1 for n in range(q)])
    out = []
    for index, exps in enumerate(itertools.product(*(range(o) for o in orders))):
        phases = np.full(q, -1, dtype=np.int64)
        acc = np.zeros(q, dtype=np.int64)
        for c, order, tab in zip(exps, orders, tables):
            acc[coprime] += c * tab[coprime] * (lcm // order)
        phases[coprime] = acc[coprime] % lcm
        out.append(DirichletCharacter(q, lcm, phases, index))
    return out


def induced_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character of conductor f inducing chi."""
    f = chi.conductor
    if f == chi.modulus:
        return chi
    q = chi.modulus
    phases = np.full(f, -1, dtype=np.int64)
    for n in range(f):
        if math.gcd(n, f) != 1:
            continue
        m = n
        while math.gcd(m, q) != 1:  # lift n mod f to a unit mod q
            m += f
        phases[n] = chi.phases[m % q]
    return DirichletCharacter(f, chi.order_lcm, phases, -1)


def gauss_sum(chi: DirichletCharacter, a: int = 1) -> complex:
    """tau_a(chi) = sum over n mod q of chi(n) e(an/q)."""
    q = chi.modulus
    n = np.arange(q)
    return complex(np.sum(chi(n) * np.exp(2j * np.pi * a * n / q)))


def epsilon_factor(chi: DirichletCharacter) -> complex:
    """Root number tau(chi) / (i^kappa sqrt(q)); unit modulus when primitive."""
    if chi.modulus == 1:
        return 1.0 + 0.0j
    if not chi.is_primitive:
        raise DomainError("root number defined for primitive characters only")
    return gauss_sum(chi) / (1j**chi.parity * math.sqrt(chi.modulus))


def theta_nu(z: complex, chi: DirichletCharacter, include_character: bool = True) -> complex:
    """Weighted theta series sum of chi(n) n^kappa exp(-pi n^2 z / q).

    include_character=False drops the chi(n) factor, leaving the bare
    n^kappa heat kernel over the same modulus.
    """
    z = complex(z)
    if z.real <= 0:
        raise DomainError("theta series needs Re(z) > 0")
    q = chi.modulus
    kappa = chi.parity
    total = 0.0 + 0.0j
    for n in range(1, 10000):
        damp = cmath.exp(-math.pi * n * n * z / q)
        term = (chi(n) if include_character else 1.0) * n**kappa * damp
        total += term
        if abs(damp) * (n + 1) ** kappa < 1e-18 * max(1.0, abs(total)):
            break
    return total


def _hurwitz_zeta(s: complex, a: float) -> complex:
    """Euler-Maclaurin Hurwitz zeta, accurate across the strip for |s| <= 25."""
    if s == 1.0:
        raise PoleError("hurwitz zeta pole at s=1")
    n_cut = max(20, int(math.ceil(3.0 * abs(s.imag))))
    n = np.arange(n_cut, dtype=float) + a
    total = complex(np.sum(np.exp(-s * np.log(n))))
    top = n_cut + a
    log_top = math.log(top)
    top_pow = cmath.exp(-s * log_top)
    total += top * top_pow / (s - 1.0) + 0.5 * top_pow
    poch = s
    scale = top_pow / top
    for k in range(1, _EM_TERMS + 1):
        total += _EM_COEFF[k - 1] * poch * scale
        poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k)
        scale /= top * top
    return total


def xi_completed_l(s: complex, chi: DirichletCharacter, path: str = "continued") -> complex:
    """Completed L: (q/pi)^{(s+kappa)/2} Gamma((s+kappa)/2) L(s, chi).

    Entire for primitive non-principal chi and satisfies
    xi(s, chi) = epsilon(chi) xi(1-s, conj chi).  The continued path sums
    incomplete-gamma tails of the split theta integral and works at any s;
    the direct path multiplies the factors and needs Hurwitz summation.
    """
    s = complex(s)
    if not chi.is_primitive or chi.is_principal:
        raise DomainError("completed L defined for primitive non-principal characters")
    q = chi.modulus
    kappa = chi.parity
    if path == "direct":
        pref = cmath.exp((s + kappa) / 2.0 * math.log(q / math.pi))
        return pref * complex(sps.gamma((s + kappa) / 2.0)) * l_function(s, chi)
    if path != "continued":
        raise DomainError(f"unknown path {path!r}")
    from .special import upper_incomplete_gamma

    eps = epsilon_factor(chi)
    chi_bar = chi.conjugate()
    total = 0.0 + 0.0j
    for n in range(1, 400):
        x = math.pi * n * n / q
        weight = float(n) ** kappa
        base = math.log(q / (math.pi * n * n))
        term = chi(n) * weight * cmath.exp((s + kappa) / 2.0 * base) * (
            upper_incomplete_gamma((s + kappa) / 2.0, x)
        ) + eps * chi_bar(n) * weight * cmath.exp((1.0 - s + kappa) / 2.0 * base) * (
            upper_incomplete_gamma((1.0 - s + kappa) / 2.0, x)
        )
        total += term
        if x > 36.0 and abs(term) < 1e-17 * max(1.0, abs(total)):
            break
    return total


def l_function(s: complex, chi: DirichletCharacter) -> complex:
    """L(s, chi) anywhere in the plane (pole only at s=1 for principal chi).

    Principal characters reduce to zeta times local Euler factors; to the
    right of the strip each residue class contributes a Hurwitz zeta; in
    and left of the strip the value is recovered from the completed form
    of the inducing primitive character.
    """
    s = complex(s)
    q = chi.modulus
    if chi.is_principal:
        val = zeta(s)
        for p, _ in _factor(q):
            val *= 1.0 - cmath.exp(-s * math.log(p))
        return val
    if s.real > 1.0:
        total = 0.0 + 0.0j
        for a in range(1, q):
            if chi.phases[a] >= 0:
                total += chi(a) * _hurwitz_zeta(s, a / q)
        return cmath.exp(-s * math.log(q)) * total
    prim = induced_primitive(chi)
    f = prim.modulus
    kappa = prim.parity
    lam = xi_completed_l(s, prim, "continued")
    l_prim = lam * cmath.exp(-(s + kappa) / 2.0 * math.log(f / math.pi)) * complex(
        sps.rgamma((s + kappa) / 2.0)
    )
    for p, _ in _factor(q):
        if f % p != 0:
            l_prim *= 1.0 - prim(p) * cmath.exp(-s * math.log(p))
    return l_prim
