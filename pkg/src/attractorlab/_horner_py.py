"""Pure-Python fallback for the fixed-point Horner kernel.

Same contract and same fixed-point semantics as the compiled extension in
_horner_gmp.pyx: results are bit-identical, only slower (every mpz
operation pays Python dispatch).
"""

from __future__ import annotations

from gmpy2 import mpz

KERNEL_NAME = "python-fallback"


class FixedHorner:
    """Evaluates p and p' at points given as (re, im) * 2^F integer pairs."""

    def __init__(self, coeffs, fraction_bits: int):
        self.F = int(fraction_bits)
        self.c = [mpz(c) << self.F for c in coeffs]
        self.n = len(coeffs)

    @property
    def fraction_bits(self):
        return self.F

    def eval_pair(self, zr, zi):
        F = self.F
        zr = mpz(zr)
        zi = mpz(zi)
        vr = vi = dr = di = mpz(0)
        for ck in reversed(self.c):
            ar = (dr * zr - di * zi) >> F
            ai = (dr * zi + di * zr) >> F
            dr = ar + vr
            di = ai + vi
            ar = (vr * zr - vi * zi) >> F
            ai = (vr * zi + vi * zr) >> F
            vr = ar + ck
            vi = ai
        return vr, vi, dr, di
