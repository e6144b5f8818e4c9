import math

import numpy as np
import pytest

from attractorlab.census import (

    PAPER_WEIGHTS,
    cell_occupancy,
    census,
    classify_family,
    density_function,
    density_mass,
    density_mass_endpoint,

    equal_mass_cells,
    family_distance,
    family_prediction,
    inside_zeros,
    ls_constant,
    predicted_count,
)

TABLE1 = [
    # degree, inside, q2, f1, f2, f3, prediction
    (5000, 64, 36, 32, 4, 0, 64.8),
    (10000, 92, 51, 45, 6, 0, 91.7),
    (15000, 112, 61, 53, 7, 1, 112.2),
    (20000, 130, 71, 62, 8, 1, 129.6),
    (25000, 146, 79, 69, 9, 1, 144.9),
    (30000, 160, 87, 76, 10, 1, 158.7),
    (35000, 172, 93, 81, 11, 1, 171.5),
    (40000, 184, 99, 86, 12, 1, 183.3),
    (50000, 204, 109, 95, 13, 1, 204.9),
    (60000, 226, 121, 104, 15, 2, 224.5),
    (70000, 242, 129, 112, 16, 1, 242.5),
]

TABLE3 = [
    (5000, 4, 4.5), (10000, 6, 6.5), (15000, 8, 7.9), (20000, 9, 9.1),
    (25000, 10, 10.2), (30000, 11, 11.2), (35000, 12, 12.1), (40000, 13, 12.9),
    (50000, 14, 14.5), (60000, 17, 15.8), (70000, 17, 17.1),
]


def test_ls_constant_reproduces_prediction_column():
    for degree, *_rest, pred in TABLE1:
        assert abs(ls_constant() * math.sqrt(degree) - pred) < 0.1, degree


def test_predicted_count_examples(geometry_table):
    ls, c = predicted_count(5000, geometry_table)
    assert abs(ls - 64.8) < 0.1
    ls, c = predicted_count(70000, geometry_table)
    assert abs(ls - 242.5) < 0.1
    with pytest.raises(ValueError):
        predicted_count(0)


def test_family_prediction_table3():
    for degree, _, pred in TABLE3:
        got = family_prediction(degree)
        assert abs(got - pred) < 0.1, (degree, got, pred)


def test_family_prediction_third_c23_zero():
    # the expected C23 count in Q2 crosses 2.5 just before degree 190000
    # (where a third zero first becomes more likely than not) and reaches
    # 3.0 only around degree 265000
    w23 = PAPER_WEIGHTS[2]
    def c23_expected(n):
        return w23 * ls_constant() * math.sqrt(n) / 2
    assert c23_expected(150000) < 2.5 <= c23_expected(190000) < 3.0
    assert c23_expected(265000) >= 3.0


def test_inside_zeros_threshold_validation(zeros200):
    with pytest.raises(ValueError):
        inside_zeros(zeros200.zeros_complex(), threshold=0.5)


def test_inside_zeros_excludes_origin_and_f5():
    from attractorlab.polygen import partition_coeffs
    from attractorlab.solver import aberth_solve

    # direct solve: the nonzero roots of F_5 sit at moduli 0.762 (twice)
    # and 1.312 (twice), so two of them survive the 0.99 cut; the origin
    # root never does
    zs = aberth_solve(partition_coeffs(5))
    za = zs.zeros_with_origin()
    inner = inside_zeros(za, 0.99)
    assert len(inner) == 2
    assert np.allclose(np.abs(inner), 0.7620313929, atol=1e-9)
    assert 0 not in inner


def test_density_masses(geometry, geometry_table):
    rows = geometry_table.rows
    # C12/C23 land on the reference to the printed digits; the angle is
    # monotone along each curve so the TV equals the endpoint difference
    assert abs(rows[(1, 2)]["density_mass"] - 2.464527879) < 1e-6
    assert abs(rows[(2, 3)]["density_mass"] - 0.036529069) < 1e-7
    for pair in rows:
        c = geometry.curves[pair]
        assert abs(density_mass(c) - density_mass_endpoint(c)) < 1e-9


def test_c13_mass_and_arcs(geometry_table):
    # frozen from exact evaluation at the solved triple point: the C13 arc
    # endpoints are 2 Im(L1 - L3) at T and at e^{i theta13}
    rows = geometry_table.rows
    assert abs(rows[(1, 3)]["density_mass"] - 0.368176499) < 1e-6
    assert abs(rows[(1, 3)]["arc_lo"] - 1.387517432) < 1e-6
    assert abs(rows[(1, 3)]["arc_hi"] - 1.755693930) < 1e-6
    assert abs(rows[(2, 3)]["arc_lo"] - 1.077010447) < 1e-6
    assert abs(rows[(2, 3)]["arc_hi"] - 1.113539516) < 1e-6


def test_weights(geometry_table):
    w = geometry_table.weights
    assert abs(sum(w) - 1.0) < 1e-12
    for got, want in zip(w, PAPER_WEIGHTS):
        assert abs(got - want) < 1e-3
    # consistency governs whether computed weights drive predictions
    assert geometry_table.consistent_with_reference


def test_sqrt_constant_vs_ls(geometry_table):
    c = geometry_table.sqrt_constant
    assert abs(c - 0.9154) < 0.01 * 0.9154  # within 1% of the fit constant


def test_density_function_consistency(geometry):
    c13 = geometry.curves[(1, 3)]
    total = 0.0
    npts = 400
    smax = float(c13.arclength[-1])
    for j in range(npts):
        s = (j + 0.5) * smax / npts
        total += density_function(c13, s) * smax / npts
    assert abs(total - density_mass(c13)) < 1e-4


def test_density_c12_unbounded_at_origin(geometry):
    c12 = geometry.curves[(1, 2)]
    near0 = density_function(c12, 1e-4)
    mid = density_function(c12, 0.5)
    atp1 = density_function(c12, 0.1)
    assert near0 > 10 * atp1 > 0
    assert math.isfinite(mid)


def test_density_lightest_near_triple_point(geometry):
    # minimum over arclength sits within 10% of the T end for C12 and C13
    for pair, t_end in (((1, 2), "end"), ((1, 3), "start")):
        c = geometry.curves[pair]
        smax = float(c.arclength[-1])
        samples = [(s, density_function(c, s)) for s in np.linspace(0.02 * smax, 0.98 * smax, 60)]
        s_min = min(samples, key=lambda t: t[1])[0]
        if t_end == "end":
            assert s_min > 0.9 * smax
        else:
            assert s_min < 0.1 * smax


def test_classify_family_fixed_mapping(geometry):
    c13 = geometry.curves[(1, 3)]
    mid = c13.points[len(c13.points) // 2]
    assert classify_family(mid, geom=geometry) == 2
    c23 = geometry.curves[(2, 3)]
    assert classify_family(c23.points[len(c23.points) // 2], geometry) == 3
    assert classify_family(-0.5 + 0.0j, geometry) == 1
    assert classify_family(-0.5 - 0.001j, geometry) == 1  # conjugated first
    with pytest.raises(ValueError):
        classify_family(0j, geometry)


def test_census_degree5000(zeros5000, geometry, geometry_table):
    za = np.concatenate([[0j] * zeros5000.origin_multiplicity,
                         zeros5000.zeros_complex()])
    rep = census(za, geometry, 5000, table=geometry_table)
    assert rep.total_inside == 64
    assert rep.q2_inside == 36
    assert rep.family_counts == (32, 4, 0)
    assert rep.threshold == 0.99
    assert abs(rep.prediction_ls - 64.8) < 0.1


def test_family_distance_small(zeros5000, zeros1000, zeros2000, geometry):
    for solved in (zeros1000, zeros2000, zeros5000):
        inner = inside_zeros(solved.zeros_complex(), 0.99)
        for z in inner:
            assert family_distance(z, geometry) < 0.05


def test_equal_mass_cells(geometry, zeros5000):
    c13 = geometry.curves[(1, 3)]
    cuts = equal_mass_cells(c13, 4)
    assert len(cuts) == 5
    assert cuts[0] == 0.0
    assert abs(cuts[-1] - float(c13.arclength[-1])) < 1e-9
    inner = inside_zeros(zeros5000.zeros_complex(), 0.99)
    q2 = inner[(inner.real <= 0) & (inner.imag >= 0)]
    f2 = [z for z in q2 if classify_family(z, geometry) == 2]
    occ = cell_occupancy(c13, f2, max(len(f2), 1))
    assert sum(occ) == len(f2)
    assert all(abs(o - 1) <= 1 for o in occ)


def test_equal_mass_cells_degree_1000_2000(geometry, zeros1000, zeros2000):
    c13 = geometry.curves[(1, 3)]
    for solved in (zeros1000, zeros2000):
        inner = inside_zeros(solved.zeros_complex(), 0.99)
        q2 = inner[(inner.real <= 0) & (inner.imag >= 0)]
        f2 = [z for z in q2 if classify_family(z, geometry) == 2]
        if not f2:
            continue
        occ = cell_occupancy(c13, f2, len(f2))
        assert all(abs(o - 1) <= 1 for o in occ)
