"""Shared fixtures: solved zero sets are expensive, so they are session
scoped and optionally cached on disk (delete tests/_cache to force fresh
solves; the acceptance suite reports whether its timing came from a live
run or a cache hit)."""

from __future__ import annotations

import json
import pathlib
import time

import numpy as np
import pytest

from attractorlab.polygen import partition_coeffs
from attractorlab.solver import SolverConfig, aberth_solve

CACHE = pathlib.Path(__file__).parent / "_cache"


class SolvedDegree:
    def __init__(self, degree, zeros, residuals, converged, precision_bits,
                 origin_multiplicity, wall_seconds, from_cache):
        self.degree = degree
        self.zeros = zeros                    # list of gmpy2.mpc
        self.residuals = residuals
        self.converged = converged
        self.precision_bits = precision_bits
        self.origin_multiplicity = origin_multiplicity
        self.wall_seconds = wall_seconds
        self.from_cache = from_cache

    def zeros_complex(self):
        return np.array([complex(z) for z in self.zeros])


def _solve_cached(degree: int) -> SolvedDegree:
    import gmpy2

    CACHE.mkdir(exist_ok=True)
    path = CACHE / f"partition-{degree}.json"
    if path.exists():
        data = json.loads(path.read_text())
        with gmpy2.context(precision=data["precision_bits"]):
            zeros = [gmpy2.mpc(s) for s in data["zeros"]]
        return SolvedDegree(
            degree, zeros, np.array(data["residuals"]),
            np.array(data["converged"], bool), data["precision_bits"],
            data["origin_multiplicity"], data["wall_seconds"], True,
        )
    t0 = time.time()
    zs = aberth_solve(partition_coeffs(degree), SolverConfig())
    wall = time.time() - t0
    path.write_text(json.dumps({
        "zeros": [str(z) for z in zs.zeros],
        "residuals": list(map(float, zs.residuals)),
        "converged": [bool(b) for b in zs.converged],
        "precision_bits": zs.precision_bits,
        "origin_multiplicity": zs.origin_multiplicity,
        "wall_seconds": wall,
    }))
    return SolvedDegree(degree, list(zs.zeros), zs.residuals, zs.converged,
                        zs.precision_bits, zs.origin_multiplicity, wall, False)


@pytest.fixture(scope="session")
def zeros200():
    return _solve_cached(200)


@pytest.fixture(scope="session")
def zeros1000():
    return _solve_cached(1000)


@pytest.fixture(scope="session")
def zeros2000():
    return _solve_cached(2000)


@pytest.fixture(scope="session")
def zeros5000():
    return _solve_cached(5000)


@pytest.fixture(scope="session")
def geometry():
    from attractorlab.attractor import attractor_geometry

    return attractor_geometry(prec=80)


@pytest.fixture(scope="session")
def geometry_table(geometry):
    from attractorlab.census import density_table

    return density_table(geometry)
