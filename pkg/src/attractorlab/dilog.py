"""Complex dilogarithm and derived objects used by the attractor geometry.

Evaluation domain is the closed unit disk with a 1e-6 halo (curve traces
start from on-circle points with rounding).  Three routes cover it:

* direct power series for |z| <= 1/2,
* reflection z <-> 1-z for points near z = 1,
* otherwise a Bernoulli series in w = -log(1-z) (converges for |w| < 2pi).

Every route exists in a fast complex-double flavor and an mpmath flavor at
requested bit precision; tests pit the routes against each other and
against mpmath's own polylog.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

PI2_6 = math.pi * math.pi / 6.0
DISK_HALO = 1e-6


class BranchProximityWarning(UserWarning):
    """Evaluation point is close to the logarithmic singularity at z = 1."""


@dataclass(frozen=True)
class DilogValue:
    z: complex
    value: complex
    err: float


@dataclass(frozen=True)
class BranchedRoot:
    """L = sqrt(Li2(x^k)) / k with the principal square root (Re >= 0)."""

    k: int
    x: complex
    L: complex


@lru_cache(maxsize=None)
def _bernoulli_frac(j: int) -> Fraction:
    if j == 0:
        return Fraction(1)
    acc = Fraction(0)
    for i in range(j):
        acc += Fraction(math.comb(j + 1, i)) * _bernoulli_frac(i)
    return -acc / (j + 1)


@lru_cache(maxsize=None)
def _log_series_coeffs_fp(nterms: int) -> tuple:
    # Li2(z) = sum_j B_j / (j+1)! * w^(j+1),  w = -log(1-z)
    return tuple(
        float(_bernoulli_frac(j) / math.factorial(j + 1)) for j in range(nterms)
    )


def _li2_fp_series(z: complex) -> complex:
    acc = 0.0j
    term = z
    n = 1
    while True:
        acc += term / (n * n)
        n += 1
        term *= z
        if abs(term) / (n * n) < 1e-18 * max(abs(acc), 1e-300):
            return acc


def _li2_fp_log(z: complex) -> complex:
    w = -cmath.log(1 - z)
    acc = 0.0j
    pw = w
    for c in _log_series_coeffs_fp(40):
        acc += c * pw
        pw *= w
        if abs(pw) * 0.26 < 1e-18 * max(abs(acc), 1e-300):
            break
    return acc


def _li2_fp(z: complex) -> complex:
    az = abs(z)
    if az <= 0.5:
        return _li2_fp_series(z)
    u = 1 - z
    if abs(u) <= 0.5:
        if u == 0:
            return complex(PI2_6)
        return PI2_6 - cmath.log(z) * cmath.log(u) - _li2_fp_series(u)
    return _li2_fp_log(z)


def _li2_mp(z, prec: int):
    """mpmath evaluation at prec bits plus guard; same route selection."""
    with mp.workprec(prec + 24):
        zz = mp.mpc(z)
        az = abs(zz)
        if az <= 0.5:
            val = _li2_mp_series(zz)
        else:
            u = 1 - zz
            if abs(u) <= 0.5:
                if u == 0:
                    val = mp.pi**2 / 6
                else:
                    val = mp.pi**2 / 6 - mp.log(zz) * mp.log(u) - _li2_mp_series(u)
            else:
                val = _li2_mp_log(zz)
    with mp.workprec(prec):
        return +val


def _li2_mp_series(z):
    acc = mp.mpc(0)
    term = z
    n = 1
    tiny = mp.mpf(2) ** (-mp.mp.prec - 6)
    while True:
        acc += term / (n * n)
        n += 1
        term *= z
        if abs(term) / (n * n) < tiny * max(abs(acc), tiny):
            return acc


def _li2_mp_log(z):
    w = -mp.log(1 - z)
    acc = mp.mpc(0)
    pw = w
    tiny = mp.mpf(2) ** (-mp.mp.prec - 6)
    # B_j/(j+1)! w^(j+1) decays like (|w|/2pi)^j and |w| < 2pi on our domain;
    # odd-j terms vanish (B_odd = 0 past j=1), so test the tail on even j only
    for j in range(0, 8 * mp.mp.prec):
        b = mp.bernoulli(j)
        if b:
            term = b / mp.factorial(j + 1) * pw
            acc += term
            if j > 2 and j % 2 == 0 and abs(term) < tiny * max(abs(acc), tiny):
                break
        pw *= w
    return acc


def li2(z, prec: int | None = None) -> DilogValue:
    """Dilogarithm on the closed unit disk (plus a 1e-6 halo).

    prec None or <= 53 uses complex doubles; otherwise mpmath at prec bits
    with error below 2^(-prec+4).  Points within 10^(-prec/4) of z = 1
    trigger a BranchProximityWarning (derivative singularity).
    """
    zc = complex(z)
    if abs(zc) > 1 + DISK_HALO:
        raise ValueError(f"li2 domain is |z| <= 1 + {DISK_HALO}; got |z| = {abs(zc)}")
    p = 53 if prec is None else prec
    # measure branch proximity before any rounding to double
    with mp.workprec(max(p, 53) + 16):
        dist1 = abs(mp.mpc(z) - 1)
        if 0 < dist1 < mp.mpf(10) ** (-p / 4):
            warnings.warn(
                f"z within 10^(-{p}/4) of the branch point z = 1",
                BranchProximityWarning,
                stacklevel=2,
            )
    if prec is None or prec <= 53:
        val = _li2_fp(zc)
        return DilogValue(zc, val, 8e-16 * max(1.0, abs(val)))
    val = _li2_mp(z, prec)
    return DilogValue(zc, val, float(mp.mpf(2) ** (-prec + 4) * max(1, abs(val))))


def circle_u(t, prec: int = 53):
    """Re Li2(e^{it}) in closed form: (3t^2 - 6 pi t + 2 pi^2) / 12 on [0, 2pi].

    Returns an mpf evaluated at prec bits (the quadratic is exact, so the
    only error is rounding).
    """
    tf = float(t)
    if tf < 0 or tf > 2 * math.pi + 1e-12:
        raise ValueError("circle_u domain is [0, 2pi]")
    with mp.workprec(prec + 16):
        th = mp.mpf(t)
        val = (3 * th * th - 6 * mp.pi * th + 2 * mp.pi * mp.pi) / 12
    with mp.workprec(prec):
        return +val


def clausen(t, prec: int = 53):
    """Im Li2(e^{it}) = sum sin(nt)/n^2 on [0, 2pi], zeta-accelerated series.

    Returns an mpf accurate to 2^(-prec+4).
    """
    tf = float(t)
    if tf < 0 or tf > 2 * math.pi + 1e-12:
        raise ValueError("clausen domain is [0, 2pi]")
    with mp.workprec(prec + 24):
        th = mp.mpf(t)
        two_pi = 2 * mp.pi
        if th > mp.pi:  # Cl2(2pi - t) = -Cl2(t); keeps the series ratio <= 1/4
            val = -_clausen_core(two_pi - th)
        else:
            val = _clausen_core(th)
    with mp.workprec(prec):
        return +val


def _clausen_core(th):
    # Cl2(t) = t - t log t + sum_{n>=1} zeta(2n) t^(2n+1) / (n (2n+1) (2pi)^(2n))
    if th == 0:
        return mp.mpf(0)
    acc = th - th * mp.log(th)
    ratio = (th / (2 * mp.pi)) ** 2
    pw = ratio * th
    n = 1
    tiny = mp.mpf(2) ** (-mp.mp.prec - 6)
    while True:
        term = mp.zeta(2 * n) * pw / (n * (2 * n + 1))
        acc += term
        if abs(term) < tiny * max(abs(acc), tiny):
            return acc
        pw *= ratio
        n += 1


def clausen_quadrature(t, prec: int = 53):
    """Clausen via -int_0^t log(2 sin(x/2)) dx; slower cross-check route."""
    tf = float(t)
    if tf < 0 or tf > 2 * math.pi + 1e-12:
        raise ValueError("clausen domain is [0, 2pi]")
    if tf == 0:
        return mp.mpf(0)
    with mp.workprec(prec + 24):
        th = mp.mpf(t)
        val = -mp.quad(lambda x: mp.log(2 * mp.sin(x / 2)), [0, th])
    with mp.workprec(prec):
        return +val


def branch_root(x, k: int, prec: int | None = None) -> BranchedRoot:
    """L_k(x) = sqrt(Li2(x^k)) / k with the principal square root."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if prec is None or prec <= 53:
        xc = complex(x)
        L = cmath.sqrt(_li2_fp(xc**k)) / k
        return BranchedRoot(k, xc, L)
    with mp.workprec(prec + 24):
        xx = mp.mpc(x)
        L = mp.sqrt(_li2_mp(xx**k, prec + 16)) / k
    with mp.workprec(prec):
        return BranchedRoot(k, complex(x), +L)


def branch_root_prime(x, k: int, prec: int | None = None):
    """d/dx [sqrt(Li2(x^k))/k] = -log(1 - x^k) / (2 x sqrt(Li2(x^k)))."""
    if prec is None or prec <= 53:
        xc = complex(x)
        xk = xc**k
        return -cmath.log(1 - xk) / (2 * xc * cmath.sqrt(_li2_fp(xk)))
    with mp.workprec(prec + 24):
        xx = mp.mpc(x)
        xk = xx**k
        val = -mp.log(1 - xk) / (2 * xx * mp.sqrt(_li2_mp(xk, prec + 16)))
    with mp.workprec(prec):
        return +val


def f_k(x, k: int, prec: int | None = None) -> float:
    """Comparison function Re[sqrt(Li2(x^k))] / k; nonnegative on the disk."""
    L = branch_root(x, k, prec).L
    return L.real if isinstance(L, complex) else mp.re(L)


def G_map(x, k: int, l: int, prec: int | None = None):
    """Conformal map exp(L_k(x) - L_l(x)) for the curve pair (k, l)."""
    if (k, l) not in {(1, 2), (1, 3), (2, 3)}:
        raise ValueError("supported pairs are (1,2), (1,3), (2,3)")
    if prec is None or prec <= 53:
        return cmath.exp(branch_root(x, k).L - branch_root(x, l).L)
    with mp.workprec(prec + 24):
        val = mp.exp(
            mp.mpc(branch_root(x, k, prec + 16).L)
            - mp.mpc(branch_root(x, l, prec + 16).L)
        )
    with mp.workprec(prec):
        return +val
