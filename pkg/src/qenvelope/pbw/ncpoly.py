"""Noncommutative polynomials over a cyclotomic field.

Words are tuples of integer letters; the meaning of each letter lives in an
:class:`~qenvelope.pbw.presentation.Alphabet`.
"""

from qenvelope.cyclo import CycloNum


class NcElement:
    """Finite linear combination of words with :class:`CycloNum` coefficients."""

    __slots__ = ("level", "terms")

    def __init__(self, level, terms=None):
        self.level = level
        clean = {}
        if terms:
            for w, c in terms.items():
                if not isinstance(c, CycloNum):
                    c = CycloNum.from_rational(level, c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def word(cls, level, word, coeff=1):
        return cls(level, {tuple(word): coeff})

    @classmethod
    def scalar(cls, level, coeff):
        return cls(level, {(): coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if isinstance(other, NcElement):
            if other.level != self.level:
                raise ValueError("elements over different fields")
            return other
        return NcElement.scalar(self.level, other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return NcElement(self.level, out)

    __radd__ = __add__

    def __neg__(self):
        return NcElement(self.level, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        return NcElement(self.level, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NcElement):
            return self.scale(other)
        other = self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                out[w] = c if s is None else s + c
        return NcElement(self.level, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        result = NcElement.scalar(self.level, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NcElement):
            return NotImplemented
        return self.level == other.level and (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "NcElement(0)"
        parts = [f"{c!r}*{list(w)}" for w, c in sorted(self.terms.items())]
        return "NcElement(" + " + ".join(parts) + ")"
