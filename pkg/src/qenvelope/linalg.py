"""Dense matrices over a cyclotomic field."""

from math import gcd

from qenvelope import kernels
from qenvelope.cyclo import CycloNum, cyclotomic_polynomial


class CycloMatrix:
    """Immutable ``rows x cols`` matrix of :class:`CycloNum` entries at one level."""

    __slots__ = ("level", "rows", "cols", "entries")

    def __init__(self, level, rows, cols, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match the shape")
        for x in entries:
            if x.level != level:
                raise ValueError(f"entry at level {x.level} in a level-{level} matrix")
        self.level = level
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, level, data):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        conv = []
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
            for x in r:
                conv.append(x if isinstance(x, CycloNum) else CycloNum.from_rational(level, x))
        return cls(level, rows, cols, conv)

    @classmethod
    def zero(cls, level, rows, cols=None):
        cols = rows if cols is None else cols
        z = CycloNum.zero(level)
        return cls(level, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, level, n):
        return cls.diagonal(level, [CycloNum.one(level)] * n)

    @classmethod
    def diagonal(cls, level, values):
        n = len(values)
        z = CycloNum.zero(level)
        entries = [z] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = v
        return cls(level, n, n, entries)

    @classmethod
    def unit(cls, level, n, i, j):
        """Elementary matrix with a single 1 at ``(i, j)``."""
        z, one = CycloNum.zero(level), CycloNum.one(level)
        return cls(level, n, n, [one if (r, c) == (i, j) else z for r in range(n) for c in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(x.is_zero() for x in self.entries)

    def is_identity(self):
        return self == CycloMatrix.identity(self.level, self.rows)

    def scalar_value(self):
        """The scalar ``c`` if ``self == c * I``, else ``None``."""
        if not self.is_square:
            return None
        c = self[0, 0] if self.rows else CycloNum.one(self.level)
        for i in range(self.rows):
            for j in range(self.cols):
                x = self[i, j]
                if (i == j and x != c) or (i != j and not x.is_zero()):
                    return None
        return c

    def _check(self, other):
        if not isinstance(other, CycloMatrix):
            raise TypeError("matrix expected")
        if other.level != self.level:
            raise ValueError("matrices over different fields")

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return CycloMatrix(self.level, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return CycloMatrix(self.level, self.rows, self.cols, [-a for a in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return CycloMatrix(self.level, self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        da, fa = _flatten(self.entries)
        db, fb = _flatten(other.entries)
        phi = cyclotomic_polynomial(self.level)
        out = kernels.matmul_flat(self.rows, self.cols, other.cols, fa, fb, list(phi))
        den = da * db
        return CycloMatrix(
            self.level, self.rows, other.cols, [CycloNum._raw(self.level, list(v), den) for v in out]
        )

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloMatrix.identity(self.level, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return (self.level, self.rows, self.cols, self.entries) == (
            other.level,
            other.rows,
            other.cols,
            other.entries,
        )

    def __hash__(self):
        return hash((self.level, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"CycloMatrix<{self.level}>({self.to_rows()!r})"

    def inverse(self):
        if not self.is_square:
            raise ValueError("only square matrices are invertible")
        n = self.rows
        one, zero = CycloNum.one(self.level), CycloNum.zero(self.level)
        aug = [list(self.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if not aug[r][c].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = aug[c][c].inverse()
            aug[c] = [x * inv for x in aug[c]]
            for r in range(n):
                if r != c and not aug[r][c].is_zero():
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return CycloMatrix(self.level, n, n, [x for r in aug for x in r[n:]])

    def is_invertible(self):
        return rank([list(self.row(i)) for i in range(self.rows)]) == self.rows

    def to_json(self):
        return [[x.to_json() for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, level, data):
        return cls.from_rows(level, [[CycloNum.from_json(level, x) for x in r] for r in data])


def _flatten(entries):
    """Common denominator and integer numerator vectors (``None`` for zero)."""
    den = 1
    for x in entries:
        d = x.denominator
        den = den * d // gcd(den, d)
    flat = []
    for x in entries:
        if x.is_zero():
            flat.append(None)
        else:
            f = den // x.denominator
            flat.append([c * f for c in x.numerator] if f != 1 else list(x.numerator))
    return den, flat


def rank(vectors):
    """Rank of a list of equal-length :class:`CycloNum` vectors."""
    return len(echelon(vectors))


def echelon(vectors):
    """Row echelon basis (pivot-normalized) of the span of ``vectors``."""
    basis = []  # (pivot, row)
    for v in vectors:
        v = list(v)
        for p, b in basis:
            if not v[p].is_zero():
                f = v[p]
                v = [x - f * y for x, y in zip(v, b)]
        p = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if p is None:
            continue
        inv = v[p].inverse()
        v = [x * inv for x in v]
        for k, (q, b) in enumerate(basis):
            if not b[p].is_zero():
                f = b[p]
                basis[k] = (q, [x - f * y for x, y in zip(b, v)])
        basis.append((p, v))
    return basis


class SpanBuilder:
    """Incrementally maintained echelon basis; :meth:`add` reports whether the span grew."""

    def __init__(self):
        self.basis = []

    def reduce(self, v):
        v = list(v)
        for p, b in self.basis:
            if not v[p].is_zero():
                f = v[p]
                v = [x - f * y for x, y in zip(v, b)]
        return v

    def add(self, v):
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if p is None:
            return False
        inv = v[p].inverse()
        self.basis.append((p, [x * inv for x in v]))
        return True

    @property
    def dim(self):
        return len(self.basis)
