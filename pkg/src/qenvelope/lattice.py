"""Lattices between the root and weight lattice.

Everything is integer linear algebra in weight coordinates: Smith normal form
with unimodular transforms, Hermite normal form for canonical bases, integer
kernels, indices and the reduction-mod-``ell`` comparison maps.
"""

from fractions import Fraction
from itertools import product
from math import gcd

from qenvelope.rootdata import RootDatum

__all__ = [
    "smith_normal_form",
    "smith_invariants",
    "hermite_normal_form",
    "integer_kernel",
    "IsoLattice",
    "root_lattice",
    "weight_lattice",
    "enumerate_intermediate_lattices",
    "lambda_generator",
    "cyclic_generator_basis",
    "k_map_image_order",
    "k_map_is_iso",
    "iso_rank",
    "predicted_iso_rank",
    "perp_sublattice",
    "levi_splitting_index",
    "levi_splitting_exponent",
    "center_exponent",
    "index",
    "symmetrized_levi_determinant",
    "brute_force_image_order",
]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def smith_normal_form(a):
    """Return ``(U, D, V)`` with ``a == U @ D @ V``, ``U``, ``V`` unimodular.

    ``D`` is diagonal (same shape as ``a``) with nonnegative entries and
    ``D[i][i]`` dividing ``D[i+1][i+1]``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    s, s_inv = _identity(m), _identity(m)
    t, t_inv = _identity(n), _identity(n)

    def row_add(i, j, c):  # row_i += c * row_j
        if not c:
            return
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        s[i] = [x + c * y for x, y in zip(s[i], s[j])]
        for r in s_inv:
            r[j] -= c * r[i]

    def row_swap(i, j):
        if i == j:
            return
        d[i], d[j] = d[j], d[i]
        s[i], s[j] = s[j], s[i]
        for r in s_inv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        s[i] = [-x for x in s[i]]
        for r in s_inv:
            r[i] = -r[i]

    def col_add(i, j, c):  # col_i += c * col_j
        if not c:
            return
        for r in d:
            r[i] += c * r[j]
        for r in t:
            r[i] += c * r[j]
        t_inv[j] = [x - c * y for x, y in zip(t_inv[j], t_inv[i])]

    def col_swap(i, j):
        if i == j:
            return
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in t:
            r[i], r[j] = r[j], r[i]
        t_inv[i], t_inv[j] = t_inv[j], t_inv[i]

    for k in range(min(m, n)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(k, m) for j in range(k, n) if d[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            row_swap(k, pi)
            col_swap(k, pj)
            done = True
            for i in range(k + 1, m):
                q = d[i][k] // d[k][k]
                row_add(i, k, -q)
                if d[i][k]:
                    done = False
            for j in range(k + 1, n):
                q = d[k][j] // d[k][k]
                col_add(j, k, -q)
                if d[k][j]:
                    done = False
            if not done:
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if d[i][j] % d[k][k]),
                None,
            )
            if bad is None:
                break
            row_add(k, bad, 1)
        if k < m and k < n and d[k][k] < 0:
            row_neg(k)
    # a = s_inv @ d @ t_inv
    return s_inv, d, t_inv


def smith_invariants(a):
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_normal_form(vectors):
    """Canonical row basis of the lattice spanned by ``vectors``.

    Rows are in echelon form with positive pivots and entries above each
    pivot reduced into ``[0, pivot)``.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return ()
    n = len(rows[0])
    out = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                rest.append(r)
            nz = [piv] + [r for r in rest if r[col]]
            zeros = [r for r in rest if not r[col] and any(r)]
            rows = [r for r in rows if not r[col]] + zeros
            rows = [r for r in rows if any(r)]
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        rows = [r for r in rows if not r[col] and any(r)]
        out.append(piv)
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        pc = next(j for j, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return tuple(tuple(r) for r in out)


def integer_kernel(a, ncols=None):
    """Basis (list of vectors) of ``{y in Z^n : a y = 0}``."""
    if not a:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    n = len(a[0])
    _, d, v = smith_normal_form(a)
    # a = U D V  =>  kernel = V^{-1} (0,..,0,*,..,*)
    v_inv = _unimodular_inverse(v)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    return [tuple(v_inv[i][j] for i in range(n)) for j in range(r, n)]


def _unimodular_inverse(v):
    n = len(v)
    inv = _rational_inverse(v)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def _rational_inverse(a):
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _det(a):
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(det)


def _columns_to_matrix(cols):
    return [list(row) for row in zip(*cols)]


class IsoLattice:
    """A lattice ``Q <= M <= Lambda`` with an explicit ordered basis.

    ``basis`` is a sequence of weight-coordinate vectors (the columns of the
    basis matrix). Equality and hashing use the Hermite normal form, so two
    bases of the same lattice compare equal.
    """

    __slots__ = ("datum", "basis", "_hnf", "name")

    def __init__(self, datum, basis, name=None):
        if not isinstance(datum, RootDatum):
            raise TypeError("datum must be a RootDatum")
        basis = tuple(tuple(int(x) for x in v) for v in basis)
        n = datum.rank
        if len(basis) != n or any(len(v) != n for v in basis):
            raise ValueError(f"need {n} basis vectors of length {n}")
        if _det(_columns_to_matrix(basis)) == 0:
            raise ValueError("basis vectors are linearly dependent")
        self.datum = datum
        self.basis = basis
        self._hnf = hermite_normal_form(basis)
        self.name = name
        for alpha in datum.simple_roots:
            if not self.contains(alpha):
                raise ValueError("lattice does not contain the root lattice")

    @property
    def matrix(self):
        return _columns_to_matrix(self.basis)

    @property
    def hnf(self):
        return self._hnf

    def index_in_weight_lattice(self):
        return abs(_det(self.matrix))

    def index_over_root_lattice(self):
        return root_lattice(self.datum).index_in_weight_lattice() // self.index_in_weight_lattice()

    def coordinates(self, vector):
        """Integer coordinates of ``vector`` in this basis; ValueError if outside."""
        inv = _rational_inverse(self.matrix)
        coords = [sum(r * x for r, x in zip(row, vector)) for row in inv]
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"{tuple(vector)} is not in the lattice")
        return tuple(int(c) for c in coords)

    def contains(self, vector):
        try:
            self.coordinates(vector)
        except ValueError:
            return False
        return True

    def is_sublattice_of(self, other):
        return all(other.contains(v) for v in self.basis)

    def with_basis(self, basis, name=None):
        other = IsoLattice(self.datum, basis, name or self.name)
        if other != self:
            raise ValueError("new basis spans a different lattice")
        return other

    def label(self):
        if self.name:
            return self.name
        return f"M[{self.index_over_root_lattice()}]"

    def __eq__(self, other):
        if not isinstance(other, IsoLattice):
            return NotImplemented
        return self.datum is other.datum and self._hnf == other._hnf

    def __hash__(self):
        return hash((self.datum.label, self._hnf))

    def __repr__(self):
        return f"IsoLattice({self.datum.label}, {self.label()}, basis={list(self.basis)})"


def root_lattice(datum):
    return IsoLattice(datum, datum.simple_roots, "Q")


def weight_lattice(datum):
    return IsoLattice(datum, datum.fundamental_weights, "Λ")


def enumerate_intermediate_lattices(datum):
    """All lattices between ``Q`` and ``Lambda``, one per subgroup of ``Lambda/Q``.

    Ordered by ``|M/Q|`` and then by Hermite normal form, so ``Q`` is first and
    ``Lambda`` last.
    """
    q = root_lattice(datum)
    u, d, _ = smith_normal_form(q.matrix)
    n = datum.rank
    orders = [d[i][i] for i in range(n)]
    reps = []
    for k in product(*(range(o) for o in orders)):
        reps.append(tuple(sum(u[i][j] * k[j] for j in range(n)) for i in range(n)))
    found = {}
    for g1 in reps:
        for g2 in reps:
            hnf = hermite_normal_form(list(q.basis) + [g1, g2])
            if hnf not in found:
                found[hnf] = IsoLattice(datum, hnf)
    lattices = sorted(found.values(), key=lambda m: (m.index_over_root_lattice(), m.hnf))
    lattices[0].name = "Q"
    lattices[-1].name = "Λ"
    return lattices


def center_exponent(lattice):
    """Exponent of ``M/Q``, which is also the exponent of the center of ``G_M``."""
    q = root_lattice(lattice.datum)
    coords = [lattice.coordinates(v) for v in q.basis]
    inv = smith_invariants(_columns_to_matrix(coords))
    e = 1
    for x in inv:
        e = e * x // gcd(e, x)
    return e


def lambda_generator(datum):
    """A weight that together with ``a_1 .. a_{n-1}`` is a basis of ``Lambda`` (types A and E6)."""
    n = datum.rank
    if datum.type == "A":
        return tuple(int(i == 0) for i in range(n))
    if datum.type == "E" and n == 6:
        return (0, 0, 1, 0, -1, 0)
    raise ValueError(f"no cyclic generator of this form for type {datum.label}")


def cyclic_generator_basis(lattice):
    """Basis ``(|Lambda/M| * lambda_Lambda, a_1, ..., a_{n-1})`` of ``M``."""
    datum = lattice.datum
    lam = lambda_generator(datum)
    k = lattice.index_in_weight_lattice()
    basis = [tuple(k * x for x in lam)] + list(datum.simple_roots[:-1])
    return lattice.with_basis(basis)


def _factors(x):
    if isinstance(x, IsoLattice):
        return [x]
    return list(x)


def _relative_matrix(m, n):
    """Columns: coordinates of the basis of ``m`` in the basis of ``n``."""
    if m.datum is not n.datum:
        raise ValueError("lattices belong to different root data")
    if not m.is_sublattice_of(n):
        raise ValueError(f"{m.label()} is not contained in {n.label()}")
    return _columns_to_matrix([n.coordinates(v) for v in m.basis])


def _check_ell(ell):
    if ell < 1 or ell % 2 == 0:
        raise ValueError(f"ell must be odd, got {ell}")


def k_map_image_order(m, n, ell):
    """Order of the image of ``M/ell M -> N/ell N`` (products are taken over factors)."""
    _check_ell(ell)
    total = 1
    for mi, ni in zip(_factors(m), _factors(n), strict=True):
        for dv in smith_invariants(_relative_matrix(mi, ni)):
            total *= ell // gcd(dv, ell)
    return total


def k_map_is_iso(m, n, ell):
    rank = sum(f.datum.rank for f in _factors(n))
    return k_map_image_order(m, n, ell) == ell**rank


def iso_rank(m, n, ell):
    """Rank of ``U^N`` over the image of ``U^M``, from the image order of ``k_MN``."""
    rank = sum(f.datum.rank for f in _factors(n))
    image = k_map_image_order(m, n, ell)
    assert ell**rank % image == 0
    return ell**rank // image


def predicted_iso_rank(m, n, ell):
    """``prod_i gcd(ell, |N_i/M_i|)`` over the simple factors."""
    _check_ell(ell)
    out = 1
    for mi, ni in zip(_factors(m), _factors(n), strict=True):
        idx = mi.index_in_weight_lattice() // ni.index_in_weight_lattice()
        out *= gcd(ell, idx)
    return out


def index(m, n):
    """``|N/M|`` for ``M <= N``."""
    _relative_matrix(m, n)
    return m.index_in_weight_lattice() // n.index_in_weight_lattice()


def perp_sublattice(lattice, subset):
    """Basis of ``N cap Pi^perp``, the elements of ``N`` with zero ``Pi``-coordinates."""
    subset = sorted(set(subset))
    mat = lattice.matrix
    if not subset:
        return hermite_normal_form(lattice.basis)
    rows = [mat[i] for i in subset]
    kernel = integer_kernel(rows, ncols=lattice.datum.rank)
    vecs = [tuple(sum(mat[i][j] * y[j] for j in range(len(y))) for i in range(len(mat))) for y in kernel]
    return hermite_normal_form(vecs)


def _levi_sublattice_matrix(lattice, subset):
    datum = lattice.datum
    gens = [datum.simple_roots[i] for i in sorted(set(subset))] + list(perp_sublattice(lattice, subset))
    return _columns_to_matrix([lattice.coordinates(v) for v in gens])


def levi_splitting_index(lattice, subset):
    """``|N / (Q_Pi + N_perp)|``; the splitting condition is coprimality with ``ell``."""
    return abs(_det(_levi_sublattice_matrix(lattice, subset)))


def levi_splitting_exponent(lattice, subset):
    inv = smith_invariants(_levi_sublattice_matrix(lattice, subset))
    e = 1
    for x in inv:
        e = e * x // gcd(e, x)
    return e


def symmetrized_levi_determinant(datum, subset):
    """``|det(D_Pi A_Pi)|``, the Gram determinant of the simple roots in ``Pi``."""
    idx = sorted(set(subset))
    if not idx:
        return 1
    return abs(_det([[datum.form[i][j] for j in idx] for i in idx]))


def levi_cartan_determinant(datum, subset):
    idx = sorted(set(subset))
    if not idx:
        return 1
    return abs(_det([list(r) for r in datum.cartan_submatrix(idx)]))


def brute_force_image_order(m, n, ell):
    """Enumerate all ``ell**rank`` classes of ``M/ell M`` and count distinct images."""
    t = _relative_matrix(m, n)
    r = len(t)
    images = set()
    for x in product(range(ell), repeat=r):
        images.add(tuple(sum(t[i][j] * x[j] for j in range(r)) % ell for i in range(r)))
    return len(images)
