import math

import gmpy2
import numpy as np
import pytest
from gmpy2 import mpc, mpfr

from attractorlab.polygen import ExactPolynomial, PolyKind, partition_coeffs
from attractorlab.solver import (
    DerivativeUnderflow,
    Schedule,
    SolverConfig,
    ZeroSet,
    aberth_solve,
    checksum_report,
    conjugate_pairing_defect,
    horner_eval,
    newton_polish,
)


def test_f5_roots_vieta():
    zs = aberth_solve(partition_coeffs(5))
    assert zs.origin_multiplicity == 1
    assert len(zs.zeros) == 4
    assert zs.all_converged
    # Vieta on x^4 + x^3 + 2x^2 + 2x + 1: sum = -1, product = 1
    with gmpy2.context(precision=200):
        s = sum(zs.zeros, mpc(0))
        prod = mpc(1)
        for z in zs.zeros:
            prod *= z
        assert abs(s + 1) < 1e-30
        assert abs(prod - 1) < 1e-30


def test_f2_exact():
    zs = aberth_solve(partition_coeffs(2))
    za = zs.zeros_complex()
    assert zs.origin_multiplicity == 1
    assert len(za) == 1
    assert abs(za[0] + 1) < 1e-30
    rep = checksum_report(zs, partition_coeffs(2))
    assert rep.sum_residual < 1e-30
    assert rep.e2_residual < 1e-30  # e2 = a_0 / a_2 = 0


@pytest.mark.parametrize("n", [50, 200])
def test_vieta_checksums(n):
    p = partition_coeffs(n)
    zs = aberth_solve(p)
    assert zs.all_converged
    rep = checksum_report(zs, p)
    digits = zs.precision_bits / 3.32
    assert rep.sum_residual < 10 ** (-digits / 2)
    assert rep.e2_residual < 10 ** (-digits / 2)


def test_f200_clusters_near_circle(zeros200):
    za = zeros200.zeros_complex()
    r = np.abs(za)
    # most zeros hug the unit circle; the inner stragglers are O(sqrt(n))
    assert (np.abs(r - 1) < 0.2).mean() > 0.9
    assert (r < 0.9).sum() < 2.5 * math.sqrt(200)


def test_conjugate_symmetry(zeros200):
    zs = ZeroSet(200, zeros200.zeros, zeros200.residuals, zeros200.converged,
                 np.zeros(len(zeros200.zeros), bool), zeros200.precision_bits,
                 zeros200.origin_multiplicity, np.zeros(len(zeros200.zeros)), 0)
    assert conjugate_pairing_defect(zs) < 1e-25


def test_reconstruction_small_degrees():
    # monic polynomial rebuilt from computed zeros matches the input
    for n in (12, 37, 60):
        p = partition_coeffs(n)
        cfg = SolverConfig(precision_bits=256)
        zs = aberth_solve(p, cfg)
        with gmpy2.context(precision=360):
            coeffs = [mpc(1)]
            for z in zs.zeros:
                coeffs = [mpc(0)] + coeffs
                for i in range(len(coeffs) - 1):
                    coeffs[i] = coeffs[i] - z * coeffs[i + 1]
            # compare against the deflated input (monic already)
            q = p.coeffs[zs.origin_multiplicity:]
            for got, want in zip(coeffs, q):
                if want:
                    assert abs(got - want) / abs(mpfr(want)) < 1e-20
                else:
                    assert abs(got) < mpfr(10) ** -20


def test_determinism_jacobi():
    cfg = lambda: SolverConfig(update_schedule=Schedule.JACOBI)  # noqa: E731
    a = aberth_solve(partition_coeffs(60), cfg())
    b = aberth_solve(partition_coeffs(60), cfg())
    assert all(x == y for x, y in zip(a.zeros, b.zeros))


def test_determinism_gauss_seidel():
    a = aberth_solve(partition_coeffs(80))
    b = aberth_solve(partition_coeffs(80))
    assert all(x == y for x, y in zip(a.zeros, b.zeros))


def test_unit_circle_start_policy():
    from attractorlab.solver import InitialRadius

    cfg = SolverConfig(initial_radius_policy=InitialRadius.UNIT_CIRCLE_CLUSTER)
    zs = aberth_solve(partition_coeffs(40), cfg)
    assert zs.all_converged
    ref = aberth_solve(partition_coeffs(40))
    got = np.sort_complex(zs.zeros_complex())
    want = np.sort_complex(ref.zeros_complex())
    assert np.allclose(got, want, atol=1e-25)


def test_horner_eval_examples():
    p5 = partition_coeffs(5)
    v, b = horner_eval(p5, 1.0, 128)
    assert v == 7  # F_5(1) = p(5)
    v0, _ = horner_eval(p5, 0.0, 128)
    assert v0 == 0
    p200 = partition_coeffs(200)
    v, b = horner_eval(p200, -1.0, 128)
    alt = sum((-1) ** k * c for k, c in enumerate(p200.coeffs))
    assert abs(v - alt) <= b


def test_newton_polish():
    p5 = partition_coeffs(5)
    zs = aberth_solve(p5)
    root = complex(zs.zeros[0])
    # already a root: unchanged to ~1 ulp
    polished = newton_polish(p5, root, 128)
    assert abs(complex(polished) - root) < 1e-14 * abs(root)
    # perturbed root contracts quadratically
    start = root + 1e-6
    one = newton_polish(p5, start, 200, max_steps=1)
    assert abs(complex(one) - root) < abs(start - root) / 10
    # z = 0 is a true simple root; p'(0) = 1, no underflow
    z0 = newton_polish(p5, 0.0, 128)
    assert abs(complex(z0)) < 1e-30


def test_newton_polish_derivative_underflow():
    # p = (x-1)^2 has p'(1) = 0
    p = ExactPolynomial(2, (1, -2, 1), PolyKind.PARTITION)
    with pytest.raises(DerivativeUnderflow):
        newton_polish(p, 1.0 + 1e-40, 128)


def test_config_validation():
    from attractorlab.solver import PrecisionExhausted

    with pytest.raises(PrecisionExhausted):
        SolverConfig(precision_bits=128, convergence_tol=1e-60)
    cfg = SolverConfig(precision_bits=128)
    assert cfg.convergence_tol >= 2.0 ** (-120)
