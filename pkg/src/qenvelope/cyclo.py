"""Exact arithmetic in cyclotomic fields and q-combinatorics.

Elements of ``Q(zeta_L)`` are stored as integer coefficient vectors over a
single positive denominator, reduced modulo the ``L``-th cyclotomic
polynomial. The primitive ``ell``-th root of unity used throughout the package
is ``zeta_L ** (L // ell)``.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from qenvelope import kernels

__all__ = [
    "CycloNum",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "epsilon",
    "q_int",
    "q_factorial",
    "q_binomial",
    "gaussian_polynomial",
]


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials by a monic divisor."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of the ``n``-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(k))
            assert not any(rem)
    return tuple(poly)


def euler_phi(n):
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(level):
    """Reduced coefficient vectors of ``zeta**k`` for ``0 <= k < level``."""
    phi = cyclotomic_polynomial(level)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(level):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:d])]
    return tuple(rows)


def _normalize(num, den):
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = gcd(*num, den)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycloNum:
    """Immutable element of ``Q(zeta_level)``.

    Construct from a coefficient sequence in powers of ``zeta_level`` of any
    length; it is reduced to the canonical basis ``1, zeta, ..., zeta**(d-1)``
    with ``d = phi(level)``. Arithmetic between different levels is refused;
    use :meth:`lift` to move into a larger field explicitly.
    """

    __slots__ = ("level", "_num", "_den")

    def __init__(self, level, coeffs=(0,)):
        if level < 1:
            raise ValueError("level must be a positive integer")
        table = _power_table(level)
        d = len(table[0])
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        num = [0] * d
        for k, f in enumerate(fracs):
            if f:
                c = f.numerator * (den // f.denominator)
                for j, t in enumerate(table[k % level]):
                    if t:
                        num[j] += c * t
        self.level = level
        self._num, self._den = _normalize(num, den)

    @classmethod
    def _raw(cls, level, num, den):
        obj = object.__new__(cls)
        obj.level = level
        obj._num, obj._den = _normalize(num, den)
        return obj

    @classmethod
    def from_rational(cls, level, value):
        value = Fraction(value)
        d = euler_phi(level)
        return cls._raw(level, [value.numerator] + [0] * (d - 1), value.denominator)

    @classmethod
    def zero(cls, level):
        return cls._raw(level, [0] * euler_phi(level), 1)

    @classmethod
    def one(cls, level):
        return cls.from_rational(level, 1)

    @classmethod
    def zeta(cls, level, k=1):
        return cls._raw(level, list(_power_table(level)[k % level]), 1)

    # -- accessors -----------------------------------------------------------

    @property
    def degree(self):
        return len(self._num)

    @property
    def coeffs(self):
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerator(self):
        return self._num

    @property
    def denominator(self):
        return self._den

    def is_zero(self):
        return not any(self._num)

    def is_rational(self):
        return not any(self._num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def root_exponent(self):
        """Return ``k`` with ``self == zeta**k`` (``0 <= k < level``), else None."""
        if self._den != 1:
            return None
        table = _power_table(self.level)
        for k, row in enumerate(table):
            if row == self._num:
                return k
        return None

    def multiplicative_order(self):
        k = self.root_exponent()
        if k is None:
            return None
        return self.level // gcd(k, self.level)

    def lift(self, level):
        """Image under ``Q(zeta_L) -> Q(zeta_level)``, ``zeta_L -> zeta_level**(level//L)``."""
        if level % self.level:
            raise ValueError(f"level {self.level} does not divide {level}")
        step = level // self.level
        table = _power_table(level)
        num = [0] * euler_phi(level)
        for k, c in enumerate(self._num):
            if c:
                for j, t in enumerate(table[(k * step) % level]):
                    if t:
                        num[j] += c * t
        return CycloNum._raw(level, num, self._den)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.level != self.level:
                raise ValueError(
                    f"cannot combine elements of levels {self.level} and {other.level}; lift first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.level, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self._den == other._den:
            num = [a + b for a, b in zip(self._num, other._num)]
            return CycloNum._raw(self.level, num, self._den)
        da, db = self._den, other._den
        num = [a * db + b * da for a, b in zip(self._num, other._num)]
        return CycloNum._raw(self.level, num, da * db)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(CycloNum)
        obj.level = self.level
        obj._num = tuple(-c for c in self._num)
        obj._den = self._den
        return obj

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            c = other._num[0]
            return CycloNum._raw(self.level, [c * a for a in self._num], self._den * other._den)
        if self.is_rational():
            c = self._num[0]
            return CycloNum._raw(self.level, [c * a for a in other._num], self._den * other._den)
        num = kernels.mulmod(self._num, other._num, cyclotomic_polynomial(self.level))
        return CycloNum._raw(self.level, num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloNum.from_rational(self.level, 1 / Fraction(self._num[0], self._den))
        # extended Euclid in Q[x] against the cyclotomic modulus
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.level)]
        a = _trim([Fraction(c, self._den) for c in self._num])
        r0, r1 = modulus, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r1 is a nonzero constant
        inv = [c / r1[0] for c in s1]
        return CycloNum(self.level, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        k = self.root_exponent() if self._den == 1 else None
        if k is not None:
            return CycloNum.zeta(self.level, k * n)
        result = CycloNum.one(self.level)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if other.level != self.level:
                return False
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self.level, self._num, self._den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = f"z{self.level}" + (f"^{k}" if k > 1 else "")
                terms.append(mon if c == 1 else f"-{mon}" if c == -1 else f"({c})*{mon}")
        body = " + ".join(terms) if terms else "0"
        return f"CycloNum<{self.level}>({body})"

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, level, data):
        if len(data) != euler_phi(level):
            raise ValueError(f"expected {euler_phi(level)} coefficients at level {level}")
        return cls(level, [Fraction(c) for c in data])


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod_frac(num, den):
    num = list(num)
    den = _trim(den)
    if len(num) < len(den):
        return [Fraction(0)], _trim(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] / lead
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    return q, _trim(num[: len(den) - 1] or [Fraction(0)])


def root_of_unity(level, k):
    """``zeta_level ** k`` in canonical form."""
    return CycloNum.zeta(level, k)


def epsilon(ell, level=None):
    """The fixed primitive ``ell``-th root of unity ``zeta_level ** (level // ell)``."""
    level = ell if level is None else level
    if level % ell:
        raise ValueError(f"ell={ell} must divide the field level {level}")
    return CycloNum.zeta(level, level // ell)


def q_int(c, e):
    """The symmetric quantum integer ``(e**c - e**-c) / (e - e**-1)``."""
    if not isinstance(e, CycloNum):
        raise TypeError("q_int expects a CycloNum parameter")
    if e * e == 1:
        raise ZeroDivisionError("q_int is undefined when e**2 == 1")
    if c < 0:
        return -q_int(-c, e)
    # sum e^(c-1-2j), j=0..c-1: the polynomial identity behind the quotient
    total = CycloNum.zero(e.level)
    for j in range(c):
        total = total + e ** (c - 1 - 2 * j)
    return total


def q_factorial(c, e):
    out = CycloNum.one(e.level)
    for k in range(1, c + 1):
        out = out * q_int(k, e)
    return out


@lru_cache(maxsize=None)
def gaussian_polynomial(c, d):
    """Laurent coefficients of the symmetric Gaussian binomial in a generic ``v``.

    Returns a dict ``{exponent: integer}``; built from the q-Pascal recursion
    ``[c, d] = v**(-d) [c-1, d] + v**(c-d) [c-1, d-1]``.
    """
    if d < 0 or d > c:
        raise ValueError(f"Gaussian binomial needs 0 <= d <= c, got c={c}, d={d}")
    if d == 0 or d == c:
        return {0: 1}
    out = {}
    for e, k in gaussian_polynomial(c - 1, d).items():
        out[e - d] = out.get(e - d, 0) + k
    for e, k in gaussian_polynomial(c - 1, d - 1).items():
        out[e + c - d] = out.get(e + c - d, 0) + k
    return {e: k for e, k in out.items() if k}


def q_binomial(c, d, e):
    """Symmetric Gaussian binomial evaluated at ``e``.

    The generic polynomial is specialized last, so values stay defined where the
    factorial quotient is ``0/0`` (for instance at roots of unity).
    """
    if d < 0 or d > c:
        raise ValueError(f"q_binomial needs 0 <= d <= c, got c={c}, d={d}")
    if not isinstance(e, CycloNum):
        raise TypeError("q_binomial expects a CycloNum parameter")
    total = CycloNum.zero(e.level)
    for exp, k in gaussian_polynomial(c, d).items():
        total = total + k * e**exp
    return total
