"""Geometric skeleton of the zero attractor.

Region classification by the comparison functions f_1, f_2, f_3; the three
equal-f curves traced as level sets of Re(L_k - L_l); the triple point
where all three functions agree; and the circle angles where dominance
changes hands.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .dilog import branch_root, branch_root_prime, circle_u, clausen, f_k

CURVE_PAIRS = ((1, 2), (1, 3), (2, 3))


class BracketFailure(RuntimeError):
    """No sign change of f_k - f_l in the expected circle subinterval."""


class NonConvergence(RuntimeError):
    pass


class StepCollapse(RuntimeError):
    """Curvature forced the trace step below the resolvable scale."""


class DerivativeVanishes(RuntimeError):
    """|L_k' - L_l'| dropped below tolerance (e.g. at the triple point)."""


class Region(enum.Enum):
    R1 = 1
    R2 = 2
    R3 = 3


@dataclass(frozen=True)
class RegionLabel:
    value: Region
    margin: float
    on_boundary: bool


@dataclass(frozen=True)
class CurveSample:
    pair: tuple
    points: np.ndarray      # complex, ordered from the documented s=0 end
    arclength: np.ndarray   # cumulative, arclength[0] = 0
    residuals: np.ndarray   # |f_k - f_l| per point
    tol: float

    def length(self) -> float:
        return float(self.arclength[-1])


@dataclass(frozen=True)
class AttractorGeometry:
    triple_point: complex
    theta13: float
    theta12: float
    theta23: float
    curves: dict  # pair -> CurveSample


def _pair_gap(z, k, l):
    """g = L_k - L_l and g' at z (float path)."""
    g = branch_root(z, k).L - branch_root(z, l).L
    gp = branch_root_prime(z, k) - branch_root_prime(z, l)
    return g, gp


def classify_region(x, tol: float = 1e-9) -> RegionLabel:
    """Label of argmax{f_1, f_2, f_3} at x in the closed upper unit disk."""
    xc = complex(x)
    if abs(xc) > 1 + 1e-9 or xc.imag < -1e-12:
        raise ValueError("classify_region expects the closed upper unit disk")
    vals = [f_k(xc, k) for k in (1, 2, 3)]
    order = sorted(range(3), key=lambda i: -vals[i])
    margin = vals[order[0]] - vals[order[1]]
    return RegionLabel(Region(order[0] + 1), margin, margin < tol)


def _f_circle(t, k, prec):
    """f_k(e^{it}) from the closed forms u, v on the circle."""
    with mp.workprec(prec + 16):
        kt = mp.mpf(t) * k
        two_pi = 2 * mp.pi
        kt = kt - two_pi * mp.floor(kt / two_pi)
        li2 = mp.mpc(circle_u(kt, prec + 16), clausen(kt, prec + 16))
        return mp.re(mp.sqrt(li2)) / k


def _bisect(fun, a, b, prec):
    fa = fun(a)
    fb = fun(b)
    if mp.sign(fa) == mp.sign(fb):
        raise BracketFailure(f"no sign change in [{float(a)}, {float(b)}]")
    for _ in range(prec + 8):
        m = (a + b) / 2
        fm = fun(m)
        if mp.sign(fm) == mp.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return (a + b) / 2


def boundary_angles(prec: int = 80):
    """Circle angles where (f1,f3), (f1,f2), (f2,f3) exchange dominance.

    Bracketing subintervals: theta13 in (1.9, 2pi/3), theta12 in
    (2pi/3, 3pi/4), theta23 in (3pi/4, 2.45).
    """
    with mp.workprec(prec + 16):
        th13 = _bisect(lambda t: _f_circle(t, 1, prec) - _f_circle(t, 3, prec),
                       mp.mpf("1.9"), 2 * mp.pi / 3, prec)
        th12 = _bisect(lambda t: _f_circle(t, 1, prec) - _f_circle(t, 2, prec),
                       2 * mp.pi / 3, 3 * mp.pi / 4, prec)
        th23 = _bisect(lambda t: _f_circle(t, 2, prec) - _f_circle(t, 3, prec),
                       3 * mp.pi / 4, mp.mpf("2.45"), prec)
    with mp.workprec(prec):
        return +th13, +th12, +th23


def triple_point(prec: int = 80, seed: complex | None = None) -> complex:
    """Common zero of (f1 - f3, f2 - f3) inside the disk, by damped Newton.

    Seeded from a coarse trace of the f1 = f2 level set until it crosses
    f1 = f3, unless an explicit seed is given.
    """
    if seed is None:
        seed = _triple_seed()
    with mp.workprec(prec + 24):
        z = mp.mpc(seed)
        tol = mp.mpf(2) ** (-(prec + 8))
        for _ in range(prec):
            r1 = _residual_pair(z, prec)
            # analytic gradients: grad Re g = (Re g', -Im g')
            g13p = mp.mpc(_lkp_mp(z, 1, prec)) - _lkp_mp(z, 3, prec)
            g23p = mp.mpc(_lkp_mp(z, 2, prec)) - _lkp_mp(z, 3, prec)
            a11, a12 = mp.re(g13p), -mp.im(g13p)
            a21, a22 = mp.re(g23p), -mp.im(g23p)
            det = a11 * a22 - a12 * a21
            if det == 0:
                raise NonConvergence("singular Jacobian in triple-point Newton")
            dx = (-r1[0] * a22 + r1[1] * a12) / det
            dy = (-a11 * r1[1] + a21 * r1[0]) / det
            step = mp.mpc(dx, dy)
            # damp long steps; the basin is comfortable but the seed is coarse
            if abs(step) > 0.1:
                step *= mp.mpf("0.1") / abs(step)
            z += step
            if abs(r1[0]) < tol and abs(r1[1]) < tol and abs(step) < tol:
                break
        else:
            raise NonConvergence(
                f"triple point Newton stalled: residuals {float(abs(r1[0])):.2e}, "
                f"{float(abs(r1[1])):.2e}"
            )
    with mp.workprec(prec):
        return complex(mp.re(z), mp.im(z)) if prec <= 53 else +z


def _lkp_mp(z, k, prec):
    return branch_root_prime(z, k, prec + 16)


def _residual_pair(z, prec):
    f1 = mp.re(mp.mpc(branch_root(z, 1, prec + 16).L))
    f2 = mp.re(mp.mpc(branch_root(z, 2, prec + 16).L))
    f3 = mp.re(mp.mpc(branch_root(z, 3, prec + 16).L))
    return (f1 - f3, f2 - f3)


def _triple_seed() -> complex:
    """Coarse seed: walk the f1 = f2 level set until f1 - f3 changes sign."""
    z = _project_to_level(1e-3 * cmath.exp(1j * (math.pi - math.sqrt(1e-3))), 1, 2)
    s13 = f_k(z, 1) - f_k(z, 3)
    h = 5e-3
    for _ in range(5000):
        _, gp = _pair_gap(z, 1, 2)
        t = 1j * gp.conjugate() / abs(gp)
        if (t.conjugate() * (-0.7 + 0.7j - z)).real < 0:
            t = -t
        zn = _project_to_level(z + h * t, 1, 2)
        v = f_k(zn, 1) - f_k(zn, 3)
        if s13 * v <= 0:
            return (z + zn) / 2
        z, s13 = zn, v
    raise NonConvergence("could not bracket the triple point along f1 = f2")


def _project_to_level(z, k, l, tol=1e-13, iters=12):
    """1-D Newton along the gradient onto Re(L_k - L_l) = 0."""
    for _ in range(iters):
        g, gp = _pair_gap(z, k, l)
        if g.real == 0 or abs(g.real) < tol:
            return z
        z = z - g.real * gp.conjugate() / abs(gp) ** 2
    return z


def trace_curve(pair, start, direction, step: float = 2e-4, tol: float = 1e-12,
                stop_point: complex | None = None, phi_max: float = 0.02,
                max_points: int = 500_000) -> CurveSample:
    """Predictor-corrector trace of the level set f_k = f_l.

    The predictor follows the unit tangent i * conj(g') / |g'| (Heun
    average of the two endpoint tangents); the corrector projects back
    onto the level set along the gradient.  `direction` fixes the initial
    tangent sense: +1 keeps the tangent as computed, -1 flips it; passing
    a complex number instead orients the tangent toward that point.

    Terminates at the unit circle (bisected onto |z| = 1), at stop_point
    (appended via a closing straight segment once within 10*step), at the
    real axis, or on leaving the closed disk.
    """
    k, l = pair
    if (k, l) not in CURVE_PAIRS:
        raise ValueError(f"unsupported pair {pair}")
    g0, _ = _pair_gap(complex(start), k, l)
    if abs(g0.real) > 1e-6:  # corrector basin; callers seed within O(step^2)
        raise ValueError(
            f"start point is not on the level set (|f_{k} - f_{l}| = {abs(g0.real):.2e})"
        )
    z = _project_to_level(complex(start), k, l, tol=tol)
    _, gp0 = _pair_gap(z, k, l)
    if isinstance(direction, complex):
        sgn = 1 if ((1j * gp0.conjugate()).conjugate() * (direction - z)).real > 0 else -1
    else:
        sgn = 1 if direction >= 0 else -1

    pts = [z]
    h = step
    for _ in range(max_points):
        g, gp = _pair_gap(z, k, l)
        if abs(gp) < 1e-12:
            raise DerivativeVanishes(f"|g'| = {abs(gp):.2e} at {z:.6f}")
        t1 = sgn * 1j * gp.conjugate() / abs(gp)
        while True:
            zm = z + h * t1
            if abs(zm) > 1 + 0.1:
                break
            _, gpm = _pair_gap(zm, k, l)
            t2 = sgn * 1j * gpm.conjugate() / abs(gpm)
            dphi = abs(cmath.phase(t2 / t1))
            if dphi <= phi_max or h <= 1e-9:
                break
            h = h / 2
        if h <= 1e-9:
            raise StepCollapse(f"step collapsed near {z:.6f}")
        zn = _project_to_level(z + h * (t1 + t2) / 2, k, l, tol=tol)

        if stop_point is not None and abs(zn - stop_point) < 10 * step:
            pts.append(zn)
            pts.append(complex(stop_point))
            break
        if abs(zn) >= 1.0:
            pts.append(_bisect_to_circle(z, zn, k, l, tol))
            break
        if zn.imag <= 0 and z.imag > 0:
            pts.append(complex(zn.real, 0.0))
            break
        pts.append(zn)
        z = zn
        if dphi < phi_max / 4 and h < step:
            h = min(1.5 * h, step)
    else:
        raise NonConvergence("trace did not terminate within max_points")

    points = np.array(pts)
    seg = np.abs(np.diff(points))
    arclength = np.concatenate([[0.0], np.cumsum(seg)])
    residuals = np.array([abs(f_k(p, k) - f_k(p, l)) if p != 0 else 0.0 for p in points])
    return CurveSample((k, l), points, arclength, residuals, tol)


def _bisect_to_circle(za, zb, k, l, tol):
    for _ in range(60):
        zm = _project_to_level((za + zb) / 2, k, l, tol=tol)
        if abs(zm) >= 1.0:
            zb = zm
        else:
            za = zm
    return zb


def curve_length(c: CurveSample) -> float:
    """Polyline length with one Richardson step (halved sampling)."""
    pts = c.points
    full = float(np.sum(np.abs(np.diff(pts))))
    coarse_pts = np.concatenate([pts[::2], pts[-1:]]) if len(pts) % 2 == 0 else pts[::2]
    coarse = float(np.sum(np.abs(np.diff(coarse_pts))))
    return full + (full - coarse) / 3.0


def attractor_geometry(prec: int = 80, step: float = 2e-4, tol: float = 1e-12,
                       origin_radius: float = 1e-6) -> AttractorGeometry:
    """Solve angles and triple point, then trace the three boundary curves.

    Curve orientations follow the arclength conventions: C12 runs from the
    origin to T; C13 and C23 run from T to the unit circle.  The origin
    stub below origin_radius is closed with a straight segment (length
    error O(origin_radius)).
    """
    th13, th12, th23 = boundary_angles(prec)
    T = triple_point(prec)
    Tc = complex(T)

    e13 = cmath.exp(1j * float(th13))
    e23 = cmath.exp(1j * float(th23))

    # C12 starts just off the origin on the small-|x| asymptote of the level set
    z0 = origin_radius * cmath.exp(1j * (math.pi - math.sqrt(origin_radius)))
    c12 = trace_curve((1, 2), z0, direction=Tc, step=step, tol=tol, stop_point=Tc)
    c12 = _prepend_origin(c12)

    c13 = trace_curve((1, 3), Tc + 0.5 * step * _away(Tc, 1, 3, e13),
                      direction=e13, step=step, tol=tol)
    c13 = _prepend_point(c13, Tc)
    c23 = trace_curve((2, 3), Tc + 0.25 * step * _away(Tc, 2, 3, e23),
                      direction=e23, step=min(step, 2e-5), tol=tol)
    c23 = _prepend_point(c23, Tc)

    return AttractorGeometry(
        triple_point=Tc if prec <= 53 else T,
        theta13=float(th13), theta12=float(th12), theta23=float(th23),
        curves={(1, 2): c12, (1, 3): c13, (2, 3): c23},
    )


def _away(T, k, l, toward):
    """Unit tangent of the (k,l) level set at distance ~0 from T, oriented."""
    _, gp = _pair_gap(T + 1e-9, k, l)  # tiny offset dodges the exact T degeneracy
    t = 1j * gp.conjugate() / abs(gp)
    return t if (t.conjugate() * (toward - T)).real > 0 else -t


def _prepend_origin(c: CurveSample) -> CurveSample:
    pts = np.concatenate([[0j], c.points])
    arclength = np.concatenate([[0.0], c.arclength + abs(c.points[0])])
    residuals = np.concatenate([[0.0], c.residuals])
    return CurveSample(c.pair, pts, arclength, residuals, c.tol)


def _prepend_point(c: CurveSample, p: complex) -> CurveSample:
    pts = np.concatenate([[p], c.points])
    arclength = np.concatenate([[0.0], c.arclength + abs(c.points[0] - p)])
    residuals = np.concatenate([[abs(f_k(p, c.pair[0]) - f_k(p, c.pair[1]))], c.residuals])
    return CurveSample(c.pair, pts, arclength, residuals, c.tol)
