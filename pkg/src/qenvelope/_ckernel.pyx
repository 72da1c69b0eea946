# cython: language_level=3, boundscheck=False, wraparound=False
"""Machine-word cyclotomic kernels.

Each entry point works on 64-bit integers and reports overflow by deferring to
the arbitrary-precision fallback in :mod:`qenvelope._pykernel`.
"""

from qenvelope import _pykernel

cdef extern from *:
    bint __builtin_mul_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_add_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_sub_overflow(long long a, long long b, long long *res) nogil

DEF MAXDEG = 64


cdef bint _load(object seq, long long *out, Py_ssize_t n):
    cdef Py_ssize_t i
    try:
        for i in range(n):
            out[i] = seq[i]
    except OverflowError:
        return False
    return True


cdef bint _mulmod_c(long long *A, long long *B, long long *F, Py_ssize_t d,
                    long long *R) nogil:
    cdef long long P[2 * MAXDEG]
    cdef long long t, c
    cdef Py_ssize_t i, j, k, off
    for i in range(2 * d - 1):
        P[i] = 0
    for i in range(d):
        if A[i] == 0:
            continue
        for j in range(d):
            if B[j] == 0:
                continue
            if __builtin_mul_overflow(A[i], B[j], &t):
                return False
            if __builtin_add_overflow(P[i + j], t, &P[i + j]):
                return False
    k = 2 * d - 2
    while k >= d:
        c = P[k]
        if c != 0:
            off = k - d
            for j in range(d):
                if F[j] != 0:
                    if __builtin_mul_overflow(c, F[j], &t):
                        return False
                    if __builtin_sub_overflow(P[off + j], t, &P[off + j]):
                        return False
        k -= 1
    for i in range(d):
        R[i] = P[i]
    return True


def mulmod(a, b, phi):
    """Same contract as :func:`qenvelope._pykernel.mulmod`."""
    cdef Py_ssize_t d = len(a)
    cdef long long A[MAXDEG]
    cdef long long B[MAXDEG]
    cdef long long F[MAXDEG + 1]
    cdef long long R[MAXDEG]
    cdef Py_ssize_t i
    if d > MAXDEG:
        return _pykernel.mulmod(a, b, phi)
    if not (_load(a, A, d) and _load(b, B, d) and _load(phi, F, d + 1)):
        return _pykernel.mulmod(a, b, phi)
    if not _mulmod_c(A, B, F, d, R):
        return _pykernel.mulmod(a, b, phi)
    return [R[i] for i in range(d)]


def matmul_flat(Py_ssize_t n, Py_ssize_t m, Py_ssize_t p, list a, list b, phi):
    """Same contract as :func:`qenvelope._pykernel.matmul_flat`."""
    cdef Py_ssize_t d = len(phi) - 1
    cdef long long X[MAXDEG]
    cdef long long Y[MAXDEG]
    cdef long long F[MAXDEG + 1]
    cdef long long T[MAXDEG]
    cdef long long ACC[MAXDEG]
    cdef Py_ssize_t i, j, k, s
    cdef bint any_term
    cdef object x, y
    if d > MAXDEG or not _load(phi, F, d + 1):
        return _pykernel.matmul_flat(n, m, p, a, b, phi)
    out = []
    for i in range(n):
        for k in range(p):
            any_term = False
            for s in range(d):
                ACC[s] = 0
            for j in range(m):
                x = a[i * m + j]
                if x is None:
                    continue
                y = b[j * p + k]
                if y is None:
                    continue
                if not (_load(x, X, d) and _load(y, Y, d)):
                    return _pykernel.matmul_flat(n, m, p, a, b, phi)
                if not _mulmod_c(X, Y, F, d, T):
                    return _pykernel.matmul_flat(n, m, p, a, b, phi)
                for s in range(d):
                    if __builtin_add_overflow(ACC[s], T[s], &ACC[s]):
                        return _pykernel.matmul_flat(n, m, p, a, b, phi)
                any_term = True
            out.append([ACC[s] for s in range(d)])
    return out
