import cmath
import math

import numpy as np
import pytest

from attractorlab.attractor import (
    BracketFailure,
    Region,
    boundary_angles,
    classify_region,
    curve_length,
    trace_curve,
    triple_point,
)
from attractorlab.dilog import branch_root, branch_root_prime, f_k

# frozen from two independent routes: the closed-form bisection used by the
# library, checked against mpmath.polylog-based evaluation at 40 digits
THETA13 = 2.066729664069389
THETA12 = 2.353626628400510
THETA23 = 2.361704175759568
TRIPLE = complex(-0.6922055813873675, 0.6913717460688658)


def test_boundary_angles():
    th13, th12, th23 = boundary_angles(80)
    assert abs(float(th13) - THETA13) < 1e-12
    assert abs(float(th12) - THETA12) < 1e-12
    assert abs(float(th23) - THETA23) < 1e-12


def test_angle_ordering():
    th13, th12, th23 = (float(t) for t in boundary_angles(60))
    assert th13 < 2 * math.pi / 3 < th12 < 3 * math.pi / 4 < th23


def test_bracket_failure():
    from attractorlab.attractor import _bisect, _f_circle

    with pytest.raises(BracketFailure):
        _bisect(lambda t: _f_circle(t, 1, 60) - _f_circle(t, 3, 60), 0.2, 0.4, 60)


def test_triple_point():
    T = complex(triple_point(80))
    assert abs(T - TRIPLE) < 1e-14
    assert abs(abs(T) - 0.9783370882) < 1e-9
    for k, l in ((1, 2), (1, 3), (2, 3)):
        assert abs(f_k(T, k) - f_k(T, l)) < 1e-12


def test_classify_examples():
    assert classify_region(0.5).value is Region.R1
    assert classify_region(cmath.exp(2.2j)).value is Region.R3
    assert classify_region(cmath.exp(3.0j)).value is Region.R2


def test_classify_margin_and_boundary_flag():
    lbl = classify_region(TRIPLE)
    assert lbl.on_boundary
    assert lbl.margin < 1e-9
    assert classify_region(0.5).margin > 0.1


def test_geometry_curves(geometry):
    c12 = geometry.curves[(1, 2)]
    c13 = geometry.curves[(1, 3)]
    c23 = geometry.curves[(2, 3)]
    # documented termini: C12 origin -> T, the others T -> circle
    assert abs(c12.points[0]) < 1e-9
    assert abs(c12.points[-1] - TRIPLE) < 1e-9
    assert abs(c13.points[0] - TRIPLE) < 1e-9
    assert abs(abs(c13.points[-1]) - 1) < 1e-12
    assert abs(c23.points[0] - TRIPLE) < 1e-9
    assert abs(abs(c23.points[-1]) - 1) < 1e-12
    for c in (c12, c13, c23):
        assert np.all(np.diff(c.arclength) > 0)
        assert c.residuals.max() < 100 * c.tol


def test_circle_endpoints_match_angles(geometry):
    assert abs(cmath.phase(geometry.curves[(1, 3)].points[-1]) - geometry.theta13) < 1e-6
    assert abs(cmath.phase(geometry.curves[(2, 3)].points[-1]) - geometry.theta23) < 1e-6


def test_curve_lengths(geometry):
    # frozen from a DOP853 integration of the arclength ODE (rtol 1e-12),
    # which agrees with the tracer to 3e-9
    lengths = {
        (1, 2): 0.9981389858,
        (1, 3): 0.2896267027,
        (2, 3): 0.0222001256,
    }
    for pair, want in lengths.items():
        got = curve_length(geometry.curves[pair])
        assert abs(got - want) < 2e-7, (pair, got)


def test_curve_length_step_convergence():
    from attractorlab.attractor import attractor_geometry

    coarse = attractor_geometry(prec=60, step=4e-4)
    fine = attractor_geometry(prec=60, step=2e-4)
    for pair in ((1, 3), (2, 3)):
        a = curve_length(coarse.curves[pair])
        b = curve_length(fine.curves[pair])
        assert abs(a - b) < 1e-6


def test_degenerate_curve_length():
    from attractorlab.attractor import CurveSample

    c = CurveSample((1, 2), np.array([0.5 + 0.5j]), np.array([0.0]),
                    np.array([0.0]), 1e-12)
    assert curve_length(c) == 0.0


def test_tangent_orthogonal_to_gradient(geometry):
    # accepted points: tangent from the ODE direction field is orthogonal
    # to the numerical gradient of f_k - f_l
    c13 = geometry.curves[(1, 3)]
    pts = c13.points[100::300]
    for z in pts:
        gp = branch_root_prime(z, 1) - branch_root_prime(z, 3)
        tangent = 1j * gp.conjugate() / abs(gp)
        h = 1e-5
        gx = (f_k(z + h, 1) - f_k(z + h, 3) - (f_k(z - h, 1) - f_k(z - h, 3))) / (2 * h)
        gy = (f_k(z + 1j * h, 1) - f_k(z + 1j * h, 3)
              - (f_k(z - 1j * h, 1) - f_k(z - 1j * h, 3))) / (2 * h)
        grad = complex(gx, gy)
        dot = (tangent.conjugate() * grad).real / (abs(tangent) * abs(grad))
        assert abs(dot) < 1e-8


def test_trace_requires_on_level_start():
    with pytest.raises(ValueError):
        trace_curve((1, 3), 0.5 + 0.1j, direction=1)


def test_region_partition_grid(geometry):
    """Every grid point of the closed upper half-disk gets exactly one
    label, and labels change only across the traced curves / axes."""
    xs = np.linspace(-1, 1, 400)
    ys = np.linspace(0, 1, 200)
    curves = list(geometry.curves.values())

    def near_boundary(z):
        if abs(z) > 0.995 or z.imag < 0.01:
            return True
        return any(_dist(z, c.points) < 0.02 for c in curves)

    flips = 0
    checked = 0
    prev_row = {}
    for y in ys:
        prev = None
        for x in xs:
            z = complex(x, y)
            if abs(z) >= 1:
                prev = None
                continue
            lbl = classify_region(z).value
            if prev is not None and lbl is not prev and not near_boundary(z):
                flips += 1
            prev = lbl
            checked += 1
    assert checked > 5000
    assert flips == 0


def _dist(z, pts):
    a = pts[:-1]
    b = pts[1:]
    ab = b - a
    den = np.abs(ab) ** 2
    den[den == 0] = 1e-300
    t = np.clip(((z - a) * np.conj(ab)).real / den, 0, 1)
    return float(np.abs(z - (a + t * ab)).min())


def test_triple_point_consistency(geometry):
    T = complex(geometry.triple_point)
    ends = [geometry.curves[(1, 2)].points[-1],
            geometry.curves[(1, 3)].points[0],
            geometry.curves[(2, 3)].points[0]]
    for e in ends:
        assert abs(e - T) < 1e-10
