"""Simultaneous root finder for exact-integer polynomials (Aberth-Ehrlich).

Partition polynomials are brutally ill-conditioned for evaluation near the
unit circle: F_n(|z|) / |F_n(z)| reaches e^(c*sqrt(n)), so float64 Horner
noise swamps the inter-root gaps long before degree 1000.  The iteration
therefore evaluates p and p' through an exact fixed-point kernel over GMP
integers (compiled extension when available, bit-identical pure-Python
fallback otherwise); positions live on a 2^-F grid fine enough for the
requested tolerance, and repulsion sums run in float64, which is all the
accuracy the Aberth correction term needs.

Certification is per root: the disk |z - z_i| <= deg * |p/p'| contains a
true root, so a root is accepted when that radius (plus the kernel's
truncation slack) drops below tolerance.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr, mpz

from .polygen import ExactPolynomial

try:
    from ._horner_gmp import KERNEL_NAME, FixedHorner
except ImportError:  # pragma: no cover - exercised via ATTRACTORLAB_NO_EXT
    from ._horner_py import KERNEL_NAME, FixedHorner

if os.environ.get("ATTRACTORLAB_NO_EXT"):
    from ._horner_py import KERNEL_NAME, FixedHorner  # noqa: F811


class SolverError(RuntimeError):
    pass


class NonConvergence(SolverError):
    pass


class PrecisionExhausted(SolverError):
    pass


class DerivativeUnderflow(SolverError):
    pass


class InitialRadius(enum.Enum):
    NEWTON_POLYGON = "newton-polygon"
    UNIT_CIRCLE_CLUSTER = "unit-circle"


class Schedule(enum.Enum):
    GAUSS_SEIDEL = "gauss-seidel"
    JACOBI = "jacobi"


@dataclass
class SolverConfig:
    precision_bits: int = 128
    max_iterations: int = 200
    convergence_tol: float | None = None     # relative; default 2^-(bits-8)
    initial_radius_policy: InitialRadius = InitialRadius.NEWTON_POLYGON
    update_schedule: Schedule = Schedule.GAUSS_SEIDEL
    angle_seed: int = 0
    threads: int = 1                          # Jacobi sweeps only; GS is sequential

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        floor = 2.0 ** (-self.precision_bits + 8)
        if self.convergence_tol is None:
            self.convergence_tol = floor
        elif self.convergence_tol < floor:
            raise PrecisionExhausted(
                f"convergence_tol {self.convergence_tol:g} below the "
                f"2^-(precision_bits-8) = {floor:g} floor"
            )


@dataclass
class ZeroSet:
    degree: int
    zeros: list                       # gmpy2.mpc, nonzero roots only
    residuals: np.ndarray             # |p(z)| relative to the Horner error bound
    converged: np.ndarray             # bool per zero
    clustered: np.ndarray             # bool per zero
    precision_bits: int
    origin_multiplicity: int          # root at z=0, reported separately
    inclusion_radii: np.ndarray
    sweeps: int
    kernel: str = KERNEL_NAME

    def zeros_complex(self) -> np.ndarray:
        return np.array([complex(z) for z in self.zeros])

    def zeros_with_origin(self) -> np.ndarray:
        """All degree-many zeros as complex, origin copies included."""
        return np.concatenate([np.zeros(self.origin_multiplicity, complex),
                               self.zeros_complex()])

    @property
    def all_converged(self) -> bool:
        return bool(self.converged.all())


def _newton_polygon_points(logq: np.ndarray, seed: int) -> np.ndarray:
    """Initial guesses on circles at the Newton-polygon radius estimates.

    One circle per upper-hull edge of (k, log|a_k|), carrying as many
    points as the edge spans, with a deterministic per-edge angular offset.
    """
    deg = len(logq) - 1
    hull = [0]
    for k in range(1, deg + 1):
        if not np.isfinite(logq[k]):
            continue
        while len(hull) >= 2:
            k1, k2 = hull[-2], hull[-1]
            if (logq[k2] - logq[k1]) * (k - k2) <= (logq[k] - logq[k2]) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append(k)
    pts = []
    for k1, k2 in zip(hull, hull[1:]):
        m = k2 - k1
        r = math.exp((logq[k1] - logq[k2]) / m)
        off = 2 * math.pi * ((k1 * 73 + seed * 37) % 97) / (97 * m)
        for j in range(m):
            ang = 2 * math.pi * (j + 0.5) / m + off
            pts.append(r * complex(math.cos(ang), math.sin(ang)))
    return np.array(pts)


def _unit_circle_points(deg: int, seed: int) -> np.ndarray:
    off = 2 * math.pi * ((seed * 37) % 97) / (97 * deg)
    ang = 2 * math.pi * (np.arange(deg) + 0.5) / deg + off
    return np.exp(1j * ang)


class _Evaluator:
    """N = p/p' plus certified radii, switching to the reversed polynomial
    outside the unit circle so Horner magnitudes stay bounded by p(|z|)."""

    def __init__(self, coeffs, F: int):
        self.F = F
        self.deg = len(coeffs) - 1
        self.fwd = FixedHorner(coeffs, F)
        self.rev = FixedHorner(list(reversed(coeffs)), F)
        self.scale = mpz(1) << F
        # truncation slack: 2(deg+1) grid units per accumulator, with margin
        self.abs_err = mpfr(8 * (self.deg + 1)) / self.scale

    def to_grid(self, z: mpc):
        zr = mpz(gmpy2.floor(z.real * self.scale + mpfr("0.5")))
        zi = mpz(gmpy2.floor(z.imag * self.scale + mpfr("0.5")))
        return zr, zi

    def from_grid(self, zr, zi) -> mpc:
        return mpc(mpfr(zr) / self.scale, mpfr(zi) / self.scale)

    def newton_step(self, zr, zi):
        """(N, incl_err, log2|p| - log2 err_scale) at the grid point.

        incl_err bounds the kernel-truncation contribution to |N|.
        """
        z = self.from_grid(zr, zi)
        az = abs(z)
        if az <= 1:
            vr, vi, dr, di = self.fwd.eval_pair(zr, zi)
            v = self.from_grid(vr, vi)
            d = self.from_grid(dr, di)
            if d == 0:
                return None, None, None
            N = v / d
            err = (self.abs_err * (1 + abs(N))) / abs(d)
            return N, err, v
        # p(z) = z^deg G(1/z): N = z G / (deg G - w G')
        w = 1 / z
        wr, wi = self.to_grid(w)
        gv_r, gv_i, gd_r, gd_i = self.rev.eval_pair(wr, wi)
        G = self.from_grid(gv_r, gv_i)
        Gd = self.from_grid(gd_r, gd_i)
        den = self.deg * G - w * Gd
        if den == 0:
            return None, None, None
        N = z * G / den
        err = az * (self.abs_err * (1 + self.deg + abs(N))) / abs(den)
        return N, err, G


def aberth_solve(p: ExactPolynomial, cfg: SolverConfig | None = None) -> ZeroSet:
    """All roots of p, certified to cfg.convergence_tol relative accuracy.

    The origin root (leading zero coefficients) is deflated exactly before
    iteration and reported through origin_multiplicity.  Roots that fail
    certification within the sweep budget stay flagged unconverged; no
    exception is raised for them.
    """
    cfg = cfg or SolverConfig()
    m0 = next(i for i, c in enumerate(p.coeffs) if c != 0)
    coeffs = list(p.coeffs[m0:])
    deg = len(coeffs) - 1
    if deg < 1:
        return ZeroSet(p.degree, [], np.zeros(0), np.zeros(0, bool), np.zeros(0, bool),
                       cfg.precision_bits, m0, np.zeros(0), 0)

    tol_bits = int(-math.log2(cfg.convergence_tol)) + 1
    F = tol_bits + 72

    with gmpy2.context(precision=max(2 * tol_bits, F + 16)):
        ev = _Evaluator(coeffs, F)
        logq = np.array([math.log(abs(c)) if c else -np.inf for c in coeffs])

        if cfg.initial_radius_policy is InitialRadius.NEWTON_POLYGON:
            zd = _newton_polygon_points(logq, cfg.angle_seed)
        else:
            zd = _unit_circle_points(deg, cfg.angle_seed)
        grid = [ev.to_grid(mpc(z)) for z in zd]

        tol = cfg.convergence_tol
        certified = np.zeros(deg, bool)
        radii = np.full(deg, np.inf)
        jacobi = cfg.update_schedule is Schedule.JACOBI

        pool = None
        if jacobi and cfg.threads > 1:
            pool = _jacobi_pool(cfg.threads, coeffs, F)

        sweeps_used = cfg.max_iterations
        try:
            for sweep in range(cfg.max_iterations):
                if pool is not None:
                    _jacobi_parallel_sweep(pool, ev, grid, zd, certified, radii, tol, deg)
                else:
                    zd_ref = zd.copy() if jacobi else zd
                    grid_ref = list(grid) if jacobi else grid
                    for i in range(deg):
                        if certified[i]:
                            continue
                        _update_root(i, ev, grid, zd, grid_ref, zd_ref,
                                     certified, radii, tol, deg)
                if certified.all():
                    sweeps_used = sweep + 1
                    break
        finally:
            if pool is not None:
                pool.terminate()

        if not certified.all():
            _recover_strays(ev, grid, zd, certified, radii, tol, deg)

        zeros, residuals, conv, radii_out = _finalize(
            ev, grid, certified, radii, logq, cfg.precision_bits, deg
        )
    clustered = _cluster_flags(zd, radii_out)
    return ZeroSet(p.degree, zeros, residuals, conv, clustered,
                   cfg.precision_bits, m0, radii_out, sweeps_used)


def _root_step(ev, zr, zi, i, zd_ref, tol, deg):
    """One Aberth update of root i against the positions in zd_ref.

    Returns (new_zr, new_zi, znew_complex, radius, certified) or None when
    the derivative vanished at the current point.
    """
    N, err, _ = ev.newton_step(zr, zi)
    if N is None:
        return None
    dz = complex(ev.from_grid(zr, zi)) - zd_ref
    dz[i] = np.inf
    dz[np.abs(dz) < 1e-13] = np.inf
    S = complex((1.0 / dz).sum())
    denom = 1 - N * mpc(S)
    corr = N if denom == 0 else N / denom
    nzr = zr - mpz(gmpy2.floor(corr.real * ev.scale + mpfr("0.5")))
    nzi = zi - mpz(gmpy2.floor(corr.imag * ev.scale + mpfr("0.5")))
    znew = complex(ev.from_grid(nzr, nzi))
    # Braess-Hadeler style inclusion disk around the updated point
    rad = float(deg * (abs(N) + err) + abs(corr))
    certified = rad <= tol * max(abs(znew), 1e-300)
    return nzr, nzi, znew, rad, certified


def _update_root(i, ev, grid, zd, grid_ref, zd_ref, certified, radii, tol, deg):
    zr, zi = grid_ref[i]
    out = _root_step(ev, zr, zi, i, zd_ref, tol, deg)
    if out is None:
        return
    nzr, nzi, znew, rad, cert = out
    grid[i] = (nzr, nzi)
    zd[i] = znew
    radii[i] = rad
    if cert:
        certified[i] = True


_WORKER_STATE: dict = {}


def _jacobi_worker_init(coeffs, F, ctx_prec):
    gmpy2.get_context().precision = ctx_prec
    _WORKER_STATE["ev"] = _Evaluator(coeffs, F)


def _jacobi_worker_chunk(args):
    idx, grid_pairs, zd_ref, tol, deg = args
    ev = _WORKER_STATE["ev"]
    out = []
    for i, (zr, zi) in zip(idx, grid_pairs):
        res = _root_step(ev, zr, zi, i, zd_ref, tol, deg)
        out.append((i, res))
    return out


def _jacobi_pool(threads, coeffs, F):
    import multiprocessing as _mp

    ctx = _mp.get_context("fork")
    return ctx.Pool(threads, initializer=_jacobi_worker_init,
                    initargs=(coeffs, F, gmpy2.get_context().precision))


def _jacobi_parallel_sweep(pool, ev, grid, zd, certified, radii, tol, deg):
    active = np.where(~certified)[0]
    if len(active) == 0:
        return
    zd_ref = zd.copy()
    nchunk = max(1, len(active) // (4 * pool._processes))
    tasks = []
    for i0 in range(0, len(active), nchunk):
        idx = active[i0 : i0 + nchunk]
        tasks.append((idx, [grid[i] for i in idx], zd_ref, tol, deg))
    for chunk in pool.map(_jacobi_worker_chunk, tasks):
        for i, res in chunk:
            if res is None:
                continue
            nzr, nzi, znew, rad, cert = res
            grid[i] = (nzr, nzi)
            zd[i] = znew
            radii[i] = rad
            if cert:
                certified[i] = True


def _recover_strays(ev, grid, zd, certified, radii, tol, deg, tries: int = 6):
    """Re-seed uncertified approximants and iterate them alone.

    With the rest of the configuration near true roots, the Aberth
    correction from any reasonable seed contracts onto a missing root in a
    few steps; candidate seeds are midpoints of the widest angular gaps in
    the ring of certified approximants.
    """
    bad = np.where(~certified)[0]
    if len(bad) == 0:
        return
    ring = zd[certified] if certified.any() else zd
    ring = ring[(np.abs(ring) > 0.7) & (np.abs(ring) < 1.3)]
    seeds = []
    if len(ring) > 3:
        angs = np.sort(np.angle(ring))
        gaps = np.diff(np.concatenate([angs, [angs[0] + 2 * math.pi]]))
        rmean = float(np.abs(ring).mean())
        for j in np.argsort(-gaps)[: 2 * len(bad) + 4]:
            mid = angs[j] + gaps[j] / 2
            seeds.append(rmean * complex(math.cos(mid), math.sin(mid)))
    seeds.extend(0.5 * complex(math.cos(a), math.sin(a)) for a in (1.0, 2.0, 2.8))

    for i in bad:
        cands = [complex(zd[i])] + seeds
        for cand in cands[:tries]:
            grid[i] = ev.to_grid(mpc(cand))
            zd[i] = cand
            for _ in range(50):
                _update_root(i, ev, grid, zd, grid, zd, certified, radii, tol, deg)
                if certified[i]:
                    break
            if certified[i]:
                break


def _finalize(ev, grid, certified, radii, logq, out_bits, deg):
    """Zeros at output precision plus residual ratios vs the Horner bound.

    Everything magnitude-like is handled in log space: both |p(z)| and the
    no-cancellation sum B(|z|) overflow doubles at these degrees.
    """
    zeros = []
    residuals = np.empty(deg)
    ks = np.arange(len(logq))
    finite = np.isfinite(logq)
    log_kern = float(gmpy2.log(ev.abs_err))
    for i in range(deg):
        zr, zi = grid[i]
        with gmpy2.context(precision=out_bits):
            zeros.append(mpc(mpfr(zr) / ev.scale, mpfr(zi) / ev.scale))
        az = abs(complex(zeros[-1]))
        _, _, v = ev.newton_step(zr, zi)
        if v is None or v == 0:
            log_p = -math.inf
        elif az <= 1:
            log_p = float(gmpy2.log(abs(v)))
        else:
            log_p = deg * math.log(az) + float(gmpy2.log(abs(v)))
        log_kern_here = log_kern + (deg * math.log(az) if az > 1 else 0.0)
        logs = logq[finite] + ks[finite] * math.log(max(az, 1e-300))
        mx = logs.max()
        log_pabs = mx + math.log(np.exp(logs - mx).sum())
        log_bound = math.log(4 * (deg + 2)) - out_bits * math.log(2) + log_pabs
        log_res = max(log_p, log_kern_here) + math.log(2) - log_bound
        residuals[i] = math.exp(min(log_res, 700.0))
    conv = certified & (residuals <= 1.0)
    return zeros, residuals, conv, radii.copy()


def _cluster_flags(zd, radii):
    n = len(zd)
    flags = np.zeros(n, bool)
    if n < 2:
        return flags
    B = 1024
    nn_dist = np.full(n, np.inf)
    for i0 in range(0, n, B):
        blk = np.abs(zd[i0 : i0 + B, None] - zd[None, :])
        sub = blk[:, i0 : i0 + B]
        np.fill_diagonal(sub, np.inf)
        nn_dist[i0 : i0 + B] = blk.min(axis=1)
    with np.errstate(invalid="ignore"):
        flags = nn_dist < 8 * radii
    return flags


def horner_eval(p: ExactPolynomial, z, prec: int = 128):
    """(p(z), rigorous absolute error bound) by Horner at prec bits.

    The bound is 4(n+2) u B(|z|) with B the same Horner run over |a_k| at
    |z| and u = 2^-prec; it dominates the rounding of every intermediate.
    """
    if prec < 64:
        raise ValueError("prec must be >= 64")
    with gmpy2.context(precision=prec + 8):
        zz = mpc(z)
        az = abs(zz)
        v = mpc(0)
        b = mpfr(0)
        for c in reversed(p.coeffs):
            v = v * zz + c
            b = b * az + abs(c)
        bound = mpfr(4 * (p.degree + 2)) * (mpfr(2) ** (-prec)) * b
    with gmpy2.context(precision=prec):
        return +v, +bound


def newton_polish(p: ExactPolynomial, z, prec: int = 256, max_steps: int = 60):
    """Refine an approximate simple root by Newton at prec bits.

    Raises DerivativeUnderflow when |p'(z)| falls below its own Horner
    error bound (certification impossible there).
    """
    with gmpy2.context(precision=prec + 16):
        zz = mpc(z)
        for _ in range(max_steps):
            v = mpc(0)
            d = mpc(0)
            b = mpfr(0)
            az = abs(zz)
            for c in reversed(p.coeffs):
                d = d * zz + v
                v = v * zz + c
                b = b * az + abs(c)
            dbound = mpfr(4 * (p.degree + 2)) * (mpfr(2) ** (-prec)) * b * p.degree
            if abs(d) <= dbound:
                raise DerivativeUnderflow(
                    f"|p'| = {float(abs(d)):.3e} below certification bound at {complex(zz)}"
                )
            step = v / d
            zz -= step
            if abs(step) <= mpfr(2) ** (-prec) * max(abs(zz), mpfr("1e-300")):
                break
    with gmpy2.context(precision=prec):
        return +zz


@dataclass(frozen=True)
class ChecksumReport:
    sum_residual: float
    e2_residual: float
    raw_sum: complex
    paired_sum: complex
    e2: complex


def checksum_report(zs: ZeroSet, p: ExactPolynomial) -> ChecksumReport:
    """Vieta checks: sum of zeros vs -a_{n-1}/a_n and e2 vs a_{n-2}/a_n.

    e2 is evaluated stably as ((sum z)^2 - sum z^2) / 2.  The raw sum uses
    the zeros exactly as solved; the paired sum averages each conjugate
    pair first (the solver does not force exact pairing).
    """
    n = p.degree
    an = p.coeffs[n]
    target_sum = -mpfr(p.coeffs[n - 1]) / an if n >= 1 else mpfr(0)
    target_e2 = mpfr(p.coeffs[n - 2]) / an if n >= 2 else mpfr(0)
    with gmpy2.context(precision=zs.precision_bits + 32):
        s = mpc(0)
        s2 = mpc(0)
        for z in zs.zeros:
            s += z
            s2 += z * z
        e2 = (s * s - s2) / 2
        sum_res = float(abs(s - target_sum))
        e2_res = float(abs(e2 - target_e2))
        paired = _paired_sum(zs)
        return ChecksumReport(sum_res, e2_res, complex(s), complex(paired), complex(e2))


def _paired_sum(zs: ZeroSet):
    with gmpy2.context(precision=zs.precision_bits + 32):
        zs_c = zs.zeros
        used = [False] * len(zs_c)
        total = mpc(0)
        zarr = zs.zeros_complex()
        for i, z in enumerate(zs_c):
            if used[i]:
                continue
            zi = complex(z)
            if abs(zi.imag) < 1e-300:
                total += z
                used[i] = True
                continue
            j = int(np.argmin(np.abs(zarr - np.conj(zi)) + np.where(used, np.inf, 0)))
            if j != i and not used[j]:
                pair = (z + zs_c[j].conjugate()) / 2
                total += pair + pair.conjugate()
                used[i] = used[j] = True
            else:
                total += z
                used[i] = True
        return total


def conjugate_pairing_defect(zs: ZeroSet) -> float:
    """max over zeros of distance to the nearest conjugate partner."""
    zarr = zs.zeros_complex()
    worst = 0.0
    for z in zarr:
        worst = max(worst, float(np.min(np.abs(zarr - np.conj(z)))))
    return worst
