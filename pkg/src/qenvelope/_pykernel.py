"""Pure-Python cyclotomic kernels (fallback for :mod:`qenvelope._ckernel`)."""


def mulmod(a, b, phi):
    """Product of two integer coefficient vectors modulo a monic polynomial.

    ``a`` and ``b`` have length ``d``; ``phi`` holds the ``d + 1`` coefficients
    of the modulus, constant term first, leading coefficient 1.
    """
    d = len(a)
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k]
        if c:
            off = k - d
            for j in range(d):
                p = phi[j]
                if p:
                    prod[off + j] -= c * p
    return prod[:d]


def matmul_flat(n, m, p, a, b, phi):
    """Dense product of an ``n x m`` and ``m x p`` matrix of integer vectors.

    Entries are coefficient tuples over a common denominator, stored row-major;
    zero entries are ``None``. Returns a flat row-major list of lists.
    """
    d = len(phi) - 1
    out = []
    for i in range(n):
        for k in range(p):
            acc = None
            for j in range(m):
                x = a[i * m + j]
                if x is None:
                    continue
                y = b[j * p + k]
                if y is None:
                    continue
                t = mulmod(x, y, phi)
                if acc is None:
                    acc = t
                else:
                    acc = [u + v for u, v in zip(acc, t)]
            out.append(acc if acc is not None else [0] * d)
    return out
