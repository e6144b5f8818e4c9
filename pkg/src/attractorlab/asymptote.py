"""Leading-order asymptotics of F_n inside the unit disk.

Near each root of unity e^{2 pi i h/k} with k <= 3, the generating
function contributes a saddle-point term e^{w_{h,k}} I_k; the region
R(k) decides which term dominates.  This module evaluates the constants
w_{h,k}, the auxiliary double series Q_{h,k}(s), the main terms I_k, and
their assembly, plus exact big-float evaluation of F_n for comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath as mp

from .attractor import Region, RegionLabel, classify_region
from .dilog import branch_root
from .polygen import partition_coeffs
from .solver import horner_eval


class SlowConvergence(RuntimeError):
    """|x| too close to 1 for the certified series tail."""


class DomainError(ValueError):
    pass


class BranchDegeneracy(RuntimeError):
    """Li2(x^k) is too close to the negative real axis for the 4th root."""


class EvaluationUnderflow(RuntimeError):
    """|F_n(x)| indistinguishable from zero at the working precision."""


class NearBoundary(RuntimeError):
    """x is too close to a region boundary for a single-term estimate."""


@dataclass(frozen=True)
class QSeriesValue:
    h: int
    k: int
    s: complex
    x: complex
    value: complex
    truncation_error: float


@dataclass(frozen=True)
class AsymptoticEstimate:
    x: complex
    n: int
    region: RegionLabel
    value: complex
    ingredients: dict


def w_hk(x, h: int, k: int, prec: int = 80):
    """w_{h,k} = ln(1-x^k)/(2k) + sum over k-indivisible l of
    x^l / (l (e^{-2 pi i l h / k} - 1)), with a certified geometric tail.
    """
    if k < 1 or not 0 <= h < k:
        raise ValueError("need 0 <= h < k")
    if k > 1 and math.gcd(h, k) != 1:
        raise ValueError("h and k must be coprime")
    xc = complex(x)
    if abs(xc) > 1 - 1e-3:
        raise SlowConvergence("w_hk series needs |x| <= 1 - 1e-3")
    with mp.workprec(prec + 24):
        xx = mp.mpc(x)
        acc = mp.log(1 - xx**k) / (2 * k)
        if k > 1:
            sin_floor = 2 * mp.sin(mp.pi / k)
            tiny = mp.mpf(2) ** (-prec - 8)
            ax = abs(xx)
            term = mp.mpc(1)
            l = 0
            while True:
                l += 1
                term *= xx
                if l % k == 0:
                    continue
                phase = mp.expjpi(mp.mpf(-2 * l * h) / k)
                acc += term / (l * (phase - 1))
                # tail <= |x|^(l+1) / ((l+1)(1-|x|) 2 sin(pi/k))
                tail = ax ** (l + 1) / ((l + 1) * (1 - ax) * sin_floor)
                if tail < tiny * max(1, abs(acc)):
                    break
    with mp.workprec(prec):
        return +acc


def q_hk(s, x, h: int, k: int, prec: int = 60) -> QSeriesValue:
    """Q_{h,k}(s) = sum_{m,l >= 1} x^l e^{2 pi i l m h / k} l^{-1-s} m^{-s}.

    Evaluated by grouping m by residue class mod k, which turns the double
    sum into k Hurwitz-zeta-weighted polylogarithms:

        Q = k^{-s} sum_{b=1}^{k} Li_{1+s}(x e^{2 pi i b h / k}) zeta(s, b/k)

    (b = k contributes zeta(s)).  Valid for Re s > 1; each Hurwitz zeta
    carries the 1/(s-1) pole, so the residue at s=1 is Li2(x^k)/k^2.
    """
    sc = complex(s)
    if sc.real <= 1:
        raise DomainError("q_hk requires Re s > 1 (no analytic continuation)")
    xc = complex(x)
    if abs(xc) > 1 - 1e-6:
        raise DomainError("q_hk requires |x| < 1")
    if k > 1 and math.gcd(h, k) != 1:
        raise ValueError("h and k must be coprime")
    with mp.workprec(prec + 24):
        ss = mp.mpc(s)
        xx = mp.mpc(x)
        acc = mp.mpc(0)
        for b in range(1, k + 1):
            arg = xx * mp.expjpi(mp.mpf(2 * b * h) / k)
            li = mp.polylog(1 + ss, arg)
            hz = mp.zeta(ss) if b == k else mp.zeta(ss, mp.mpf(b) / k)
            acc += li * hz
        acc *= mp.power(k, -ss)
    with mp.workprec(prec):
        val = +acc
    return QSeriesValue(h, k, sc, xc, val, float(mp.mpf(2) ** (-prec + 4)))


def q_hk_direct(s, x, h: int, k: int, terms: int = 4000) -> QSeriesValue:
    """Literal truncated double sum with certified tails in both indices.

    Practical only for Re s >= 1.5 or so (the m-tail is ~ M^(1-Re s));
    kept as the cross-check route for the grouped evaluation.
    """
    sc = complex(s)
    if sc.real < 1.5:
        raise DomainError("direct double sum needs Re s >= 1.5")
    xc = complex(x)
    ax = abs(xc)
    if ax > 1 - 1e-6:
        raise DomainError("q_hk requires |x| < 1")
    sigma = sc.real
    acc = 0j
    for m in range(1, terms + 1):
        phase_m = cmath.exp(2j * math.pi * m * h / k)
        inner = 0j
        w = xc * phase_m
        pw = 1 + 0j
        for l in range(1, terms + 1):
            pw *= w
            inner += pw / (l ** (1 + sc))
        acc += inner * m ** (-sc)
        # inner truncation: sum_{l>L} |x|^l l^{-1-sigma} <= |x|^(L+1)/(1-|x|)
    tail_l = ax ** (terms + 1) / (1 - ax) * (1.0 / (1 - sigma + 1)) if ax < 1 else math.inf
    tail_m = terms ** (1 - sigma) / (sigma - 1) * (ax / (1 - ax))
    return QSeriesValue(h, k, sc, xc, complex(acc), abs(tail_l) + abs(tail_m))


def residue_extrapolation(x, h: int, k: int, js=(2, 3, 4), prec: int = 60):
    """lim_{s->1+} (s-1) Q_{h,k}(s) by Richardson over s = 1 + 10^-j.

    Converges to Li2(x^k)/k^2.
    """
    vals = []
    with mp.workprec(prec + 16):
        for j in js:
            eps = mp.mpf(10) ** (-j)
            q = q_hk(1 + eps, x, h, k, prec).value
            vals.append(mp.mpc(q) * eps)
        # two Richardson stages with grid ratio 10
        while len(vals) > 1:
            vals = [(10 * b - a) / 9 for a, b in zip(vals, vals[1:])]
    with mp.workprec(prec):
        return +vals[0]


def I_k_value(x, n: int, k: int, prec: int = 80):
    """Saddle-point main term near the k-th roots of unity:

        (1 / (2 sqrt(pi))) n^(-3/4) [sqrt(Li2(x^k))/k]^(1/2)
            * exp(2 sqrt(n) sqrt(Li2(x^k)) / k)

    with principal branches throughout.  The 1/(2 sqrt(pi)) prefactor is
    what the Gaussian width of the saddle actually yields (and what exact
    evaluation confirms: with 1/sqrt(pi) the ratio to F_n converges to 2).
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2, or 3")
    with mp.workprec(prec + 16):
        L = mp.mpc(branch_root(x, k, prec + 16).L)
        li2_val = (L * k) ** 2
        if mp.re(li2_val) < 0 and abs(mp.im(li2_val)) < 1e-10:
            raise BranchDegeneracy("Li2(x^k) on the negative real axis")
        nn = mp.mpf(n)
        val = (mp.sqrt(L) / (2 * mp.sqrt(mp.pi))) * nn ** mp.mpf("-0.75") * mp.exp(2 * mp.sqrt(nn) * L)
    with mp.workprec(prec):
        return +val


def leading_asymptotic(x, n: int, prec: int = 80,
                       margin_floor: float = 1e-3) -> AsymptoticEstimate:
    """Region-appropriate main term of F_n(x).

    R(1): e^{w_{0,1}} I_1;  R(2): (-1)^n e^{w_{1,2}} I_2;
    R(3): (e^{-2 pi i n/3} e^{w_{1,3}} + e^{-4 pi i n/3} e^{w_{2,3}}) I_3.
    Raises NearBoundary if the region margin is below margin_floor.
    """
    label = classify_region(complex(x).conjugate() if complex(x).imag < 0 else x)
    if label.margin < margin_floor:
        raise NearBoundary(
            f"region margin {label.margin:.2e} below {margin_floor:g}; "
            "single-term estimate unreliable"
        )
    with mp.workprec(prec + 16):
        if label.value is Region.R1:
            w = mp.mpc(w_hk(x, 0, 1, prec + 16))
            val = mp.exp(w) * I_k_value(x, n, 1, prec + 16)
            ingredients = {"k": 1, "w": {(0, 1): w}, "phase": 1}
        elif label.value is Region.R2:
            w = mp.mpc(w_hk(x, 1, 2, prec + 16))
            phase = (-1) ** n
            val = phase * mp.exp(w) * I_k_value(x, n, 2, prec + 16)
            ingredients = {"k": 2, "w": {(1, 2): w}, "phase": phase}
        else:
            w13 = mp.mpc(w_hk(x, 1, 3, prec + 16))
            w23 = mp.mpc(w_hk(x, 2, 3, prec + 16))
            ph1 = mp.expjpi(mp.mpf(-2 * n) / 3)
            ph2 = mp.expjpi(mp.mpf(-4 * n) / 3)
            coeff = ph1 * mp.exp(w13) + ph2 * mp.exp(w23)
            val = coeff * I_k_value(x, n, 3, prec + 16)
            ingredients = {"k": 3, "w": {(1, 3): w13, (2, 3): w23},
                           "phase": (complex(ph1), complex(ph2))}
        ingredients["I_k"] = I_k_value(x, n, ingredients["k"], prec + 16)
    with mp.workprec(prec):
        return AsymptoticEstimate(complex(x), n, label, +val, ingredients)


def log_abs_exact(x, p_or_n, prec: int = 512):
    """ln |F_n(x)| from exact big-float Horner; underflow-checked."""
    p = partition_coeffs(p_or_n) if isinstance(p_or_n, int) else p_or_n
    val, bound = horner_eval(p, x, prec)
    if abs(val) <= bound:
        raise EvaluationUnderflow(
            f"|F_n(x)| = {float(abs(val)):.3e} below error bound {float(bound):.3e}"
        )
    import gmpy2

    return float(gmpy2.log(abs(val)))


def scaled_log_limit(x, p_or_n, prec: int = 512) -> float:
    """ln|F_n(x)| / (2 sqrt(n)); approaches Re sqrt(Li2(x^k))/k in R(k)."""
    p = partition_coeffs(p_or_n) if isinstance(p_or_n, int) else p_or_n
    return log_abs_exact(x, p, prec) / (2 * math.sqrt(p.degree))
