"""Root systems in Bourbaki numbering, Weyl words and convex orders.

Weights and roots are integer vectors in the fundamental-weight basis. The
invariant form is normalized so that short roots have squared length 2.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

__all__ = [
    "RootDatum",
    "ConvexOrder",
    "build_root_datum",
    "parse_type",
    "convex_order_from_word",
    "parabolic_reduced_word",
    "b_bound",
    "validate_ell",
    "positive_root_count",
]

_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _dynkin(kind, n):
    """Edges (0-based) and half squared lengths ``(a|a)/2`` of the simple roots."""
    if kind in "ABC":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E":
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    elif kind == "F":
        edges = [(0, 1), (1, 2), (2, 3)]
    else:
        edges = [(0, 1)]
    lengths = [1] * n
    if kind == "B":
        lengths = [2] * (n - 1) + [1]
    elif kind == "C":
        lengths = [1] * (n - 1) + [2]
    elif kind == "F":
        lengths = [2, 2, 1, 1]
    elif kind == "G":
        lengths = [1, 3]
    return edges, lengths


def parse_type(label):
    """Split a label such as ``"A2"`` or ``"E6"`` into ``("A", 2)``."""
    label = label.strip().upper()
    kind, rank = label[0], int(label[1:])
    return kind, rank


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Cartan data of a simple Lie algebra.

    ``cartan[i][j]`` is ``2 (a_i|a_j) / (a_j|a_j)``, so row ``i`` lists the
    weight coordinates of the simple root ``a_i``.
    """

    type: str
    rank: int
    cartan: tuple
    form: tuple
    half_lengths: tuple
    positive_roots: tuple = field(repr=False)
    root_heights: dict = field(repr=False)

    @property
    def label(self):
        return f"{self.type}{self.rank}"

    @property
    def simple_roots(self):
        """Simple roots in weight coordinates."""
        return tuple(tuple(row) for row in self.cartan)

    @property
    def fundamental_weights(self):
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @property
    def dim(self):
        return self.rank + 2 * len(self.positive_roots)

    def root_to_weight(self, coeffs):
        """Weight coordinates of ``sum coeffs[i] * a_i``."""
        n = self.rank
        return tuple(sum(coeffs[k] * self.cartan[k][j] for k in range(n)) for j in range(n))

    def weight_to_root(self, weight):
        """Rational simple-root coordinates of a weight."""
        inv = _cartan_inverse(self.cartan)
        n = self.rank
        return tuple(sum(Fraction(weight[k]) * inv[k][j] for k in range(n)) for j in range(n))

    def pair_root(self, weight, root_coeffs):
        """``(weight | sum c_j a_j)``; an integer for weights paired with roots."""
        return sum(
            weight[j] * self.half_lengths[j] * c for j, c in enumerate(root_coeffs) if c
        )

    def pairing(self, u, v):
        """Invariant form on weights (weight coordinates), rational in general."""
        return sum(r * u[k] * self.half_lengths[k] for k, r in enumerate(self.weight_to_root(v)))

    def root_form(self, a, b):
        """Invariant form on two roots given in simple-root coordinates."""
        n = self.rank
        return sum(a[i] * b[j] * self.form[i][j] for i in range(n) for j in range(n) if a[i] and b[j])

    def reflect(self, weight, i):
        """Simple reflection ``s_i`` applied to a weight."""
        c = weight[i]
        return tuple(w - c * a for w, a in zip(weight, self.cartan[i]))

    def reflect_root(self, root_coeffs, i):
        weight = self.root_to_weight(root_coeffs)
        out = list(root_coeffs)
        out[i] -= weight[i]
        return tuple(out)

    def height(self, root_coeffs):
        return sum(root_coeffs)

    def is_long(self, root_coeffs):
        return self.root_form(root_coeffs, root_coeffs) > 2

    def subsystem_positive_roots(self, subset):
        subset = set(subset)
        return tuple(
            r for r in self.positive_roots if all(c == 0 or i in subset for i, c in enumerate(r))
        )

    def cartan_submatrix(self, subset):
        idx = sorted(subset)
        return tuple(tuple(self.cartan[i][j] for j in idx) for i in idx)


def _cartan_inverse(cartan):
    n = len(cartan)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(cartan)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def build_root_datum(kind, rank):
    """Root datum of the simple type ``(kind, rank)``; positive roots by reflection closure."""
    kind = kind.upper()
    if kind not in _VALID or not _VALID[kind](rank):
        raise ValueError(f"invalid simple type {kind}{rank}")
    edges, lengths = _dynkin(kind, rank)
    form = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        form[i][i] = 2 * lengths[i]
    for i, j in edges:
        form[i][j] = form[j][i] = -max(lengths[i], lengths[j])
    cartan = tuple(
        tuple(2 * form[i][j] // form[j][j] for j in range(rank)) for i in range(rank)
    )
    datum = RootDatum(
        type=kind,
        rank=rank,
        cartan=cartan,
        form=tuple(tuple(r) for r in form),
        half_lengths=tuple(lengths),
        positive_roots=(),
        root_heights={},
    )
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(rank):
                s = datum.reflect_root(r, i)
                if all(c >= 0 for c in s) and s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    pos = tuple(sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r))))
    object.__setattr__(datum, "positive_roots", pos)
    object.__setattr__(datum, "root_heights", {r: sum(r) for r in pos})
    return datum


def positive_root_count(kind, n):
    """Classical count of positive roots, used as an independent cross-check."""
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n),
        "F": 24,
        "G": 6,
    }[kind]


@dataclass(frozen=True)
class ConvexOrder:
    """Reduced word for ``w_0`` and the induced order on positive roots."""

    reduced_word: tuple
    positive_roots_ordered: tuple
    parabolic: tuple = ()

    def index(self, root):
        return self.positive_roots_ordered.index(root)


def convex_order_from_word(datum, word, parabolic=()):
    """Order ``b_k = s_{i_1} ... s_{i_{k-1}} (a_{i_k})``; the word must be reduced for ``w_0``."""
    word = tuple(word)
    n = datum.rank
    if len(word) != len(datum.positive_roots):
        raise ValueError(f"word of length {len(word)} cannot be reduced for w_0 of {datum.label}")
    roots = []
    for k, i in enumerate(word):
        r = tuple(int(j == i) for j in range(n))
        for j in reversed(word[:k]):
            r = datum.reflect_root(r, j)
        if any(c < 0 for c in r):
            raise ValueError(f"word {word} is not reduced")
        roots.append(r)
    if len(set(roots)) != len(roots):
        raise ValueError(f"word {word} is not reduced")
    return ConvexOrder(tuple(word), tuple(roots), tuple(sorted(parabolic)))


def _greedy_descent(datum, weight, allowed):
    word = []
    while True:
        step = next((i for i in sorted(allowed) if weight[i] > 0), None)
        if step is None:
            return word, weight
        word.append(step)
        weight = datum.reflect(weight, step)


def parabolic_reduced_word(datum, subset=()):
    """Reduced word for ``w_0`` whose prefix is a reduced word for ``w_0`` of the parabolic.

    Greedy descent from ``rho``: first inside ``subset``, then with all simple
    reflections; the lowest admissible index is taken at every step.
    """
    subset = tuple(sorted(set(subset)))
    if any(i < 0 or i >= datum.rank for i in subset):
        raise ValueError(f"subset {subset} is not a set of simple indices of {datum.label}")
    rho = tuple([1] * datum.rank)
    prefix, weight = _greedy_descent(datum, rho, subset)
    rest, weight = _greedy_descent(datum, weight, range(datum.rank))
    return convex_order_from_word(datum, prefix + rest, subset)


_TABLE_I = {
    "A": lambda n: n + 1,
    "B": lambda n: n,
    "C": lambda n: n,
    "D": lambda n: n,
    "E": lambda n: n,
    "F": lambda n: 3,
    "G": lambda n: 3,
}


def b_bound(kind, rank):
    """Max of the largest bad prime and the largest ``m`` with an ``A_{m-1}`` inside the simple roots."""
    build_root_datum(kind, rank)
    return _TABLE_I[kind.upper()](rank)


def validate_ell(ell, types=()):
    """Reject even ``ell`` and, with a ``G2`` factor, multiples of 3."""
    if not isinstance(ell, int) or ell < 1 or ell % 2 == 0:
        raise ValueError(f"ell must be an odd positive integer, got {ell}")
    if any(k.upper() == "G" for k, _ in types) and ell % 3 == 0:
        raise ValueError(f"ell must be coprime to 3 when a G2 factor is present, got {ell}")
    return ell


def factorial_coprime(ell, n):
    """Whether ``gcd(ell, n!) == 1``."""
    return gcd(ell, factorial(n)) == 1
