# cython: language_level=3
"""Fixed-point complex Horner kernel over GMP integers.

Evaluating a partition polynomial near the unit circle cancels hundreds of
bits (the coefficient mass dwarfs the value), so the accumulation must
carry the full span from max_k |a_k z^k| down to the target resolution.
This kernel keeps value and derivative as exact scaled integers
(re, im) * 2^F and runs the whole coefficient loop in C, which is what
makes simultaneous iteration over thousands of points per sweep affordable.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

cimport gmpy2
from gmpy2 cimport GMPy_MPZ_New, MPZ, import_gmpy2, mpz, mpz_t

cdef extern from "gmp.h":
    ctypedef unsigned long mp_bitcnt_t
    void mpz_init(mpz_t)
    void mpz_clear(mpz_t)
    void mpz_set(mpz_t, mpz_t)
    void mpz_add(mpz_t, mpz_t, mpz_t)
    void mpz_sub(mpz_t, mpz_t, mpz_t)
    void mpz_mul(mpz_t, mpz_t, mpz_t)
    void mpz_addmul(mpz_t, mpz_t, mpz_t)
    void mpz_submul(mpz_t, mpz_t, mpz_t)
    void mpz_mul_2exp(mpz_t, mpz_t, mp_bitcnt_t)
    void mpz_fdiv_q_2exp(mpz_t, mpz_t, mp_bitcnt_t)

import_gmpy2()

KERNEL_NAME = "gmp-fixedpoint"


cdef mpz _to_mpz(mpz_t x):
    cdef mpz out = GMPy_MPZ_New(NULL)
    mpz_set(MPZ(out), x)
    return out


cdef class FixedHorner:
    """Holds c_k * 2^F as an mpz_t array; evaluates p and p' at scaled points.

    Points are passed as gmpy2.mpz pairs (re, im) scaled by 2^F; results
    come back as gmpy2.mpz pairs at the same scale.
    """

    cdef mpz_t* c
    cdef Py_ssize_t n          # number of coefficients
    cdef unsigned long F

    def __cinit__(self, coeffs, unsigned long fraction_bits):
        cdef Py_ssize_t i
        cdef mpz tmp
        self.F = fraction_bits
        self.n = len(coeffs)
        self.c = <mpz_t*> PyMem_Malloc(self.n * sizeof(mpz_t))
        if self.c == NULL:
            raise MemoryError
        for i in range(self.n):
            tmp = gmpy2.mpz(coeffs[i])
            mpz_init(self.c[i])
            mpz_mul_2exp(self.c[i], MPZ(tmp), self.F)

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.c != NULL:
            for i in range(self.n):
                mpz_clear(self.c[i])
            PyMem_Free(self.c)

    @property
    def fraction_bits(self):
        return self.F

    def eval_pair(self, zr_obj, zi_obj):
        """(p(z), p'(z)) at z = (zr + i zi) / 2^F, all components * 2^F.

        Returns (vr, vi, dr, di) as gmpy2.mpz.
        """
        cdef mpz zr = gmpy2.mpz(zr_obj)
        cdef mpz zi = gmpy2.mpz(zi_obj)
        cdef mpz_t vr, vi, dr, di, ar, ai
        cdef Py_ssize_t k
        cdef unsigned long F = self.F
        mpz_init(vr); mpz_init(vi); mpz_init(dr); mpz_init(di)
        mpz_init(ar); mpz_init(ai)
        try:
            for k in range(self.n - 1, -1, -1):
                # d = d*z + v  (uses v from the previous step)
                mpz_mul(ar, dr, MPZ(zr)); mpz_submul(ar, di, MPZ(zi))
                mpz_mul(ai, dr, MPZ(zi)); mpz_addmul(ai, di, MPZ(zr))
                mpz_fdiv_q_2exp(ar, ar, F); mpz_fdiv_q_2exp(ai, ai, F)
                mpz_add(dr, ar, vr); mpz_add(di, ai, vi)
                # v = v*z + c_k
                mpz_mul(ar, vr, MPZ(zr)); mpz_submul(ar, vi, MPZ(zi))
                mpz_mul(ai, vr, MPZ(zi)); mpz_addmul(ai, vi, MPZ(zr))
                mpz_fdiv_q_2exp(ar, ar, F); mpz_fdiv_q_2exp(ai, ai, F)
                mpz_add(vr, ar, self.c[k]); mpz_set(vi, ai)
            return (_to_mpz(vr), _to_mpz(vi), _to_mpz(dr), _to_mpz(di))
        finally:
            mpz_clear(vr); mpz_clear(vi); mpz_clear(dr); mpz_clear(di)
            mpz_clear(ar); mpz_clear(ai)
