"""Finite-dimensional representations of ``U_eps^M(g)`` given by explicit matrices.

A representation assigns a square matrix to every ``E_i``, ``F_i`` (simple
roots, 1-based names ``E1``, ``F1``, ...) and to every ``K_b`` for the basis
vectors of the lattice (names ``K1``, ``K2``, ...). Checks are exact.
"""

import json
from dataclasses import dataclass, field
from math import gcd, lcm

from qenvelope.cyclo import CycloNum, root_of_unity
from qenvelope.lattice import IsoLattice, center_exponent, lambda_generator, cyclic_generator_basis, root_lattice
from qenvelope.linalg import CycloMatrix, SpanBuilder
from qenvelope.pbw.algebra import LCharacter
from qenvelope.pbw.presentation import QuantumPresentation, UnsupportedRankError, check_supported
from qenvelope.rootdata import build_root_datum

SCHEMA_VERSION = 1


class RepresentationError(ValueError):
    pass


class NoSmallModuleError(RepresentationError):
    """No 1-dimensional module exists for the requested central character."""


@dataclass
class Representation:
    lattice: IsoLattice
    ell: int
    level: int
    matrices: dict
    name: str = ""
    _pres: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        n = self.lattice.datum.rank
        expected = {f"{g}{i + 1}" for g in "EFK" for i in range(n)}
        if set(self.matrices) != expected:
            raise RepresentationError(f"generators must be exactly {sorted(expected)}")
        dims = {(m.rows, m.cols) for m in self.matrices.values()}
        if len(dims) != 1 or not next(iter(dims))[0] == next(iter(dims))[1]:
            raise RepresentationError("all matrices must be square of the same size")
        for m in self.matrices.values():
            if m.level != self.level:
                raise RepresentationError("matrix over the wrong field level")

    @property
    def datum(self):
        return self.lattice.datum

    @property
    def dim(self):
        return next(iter(self.matrices.values())).rows

    @property
    def presentation(self):
        if self._pres is None:
            self._pres = QuantumPresentation(self.lattice, self.ell, level=self.level)
        return self._pres

    def k_inverse(self, b):
        m = self.matrices[f"K{b + 1}"]
        try:
            return m.inverse()
        except ZeroDivisionError:
            raise RepresentationError(f"K{b + 1} acts by a singular matrix") from None

    def k_of(self, coords):
        """Matrix of ``K_mu`` for ``mu`` with the given lattice-basis coordinates."""
        out = CycloMatrix.identity(self.level, self.dim)
        for b, c in enumerate(coords):
            if c:
                base = self.matrices[f"K{b + 1}"] if c > 0 else self.k_inverse(b)
                out = out @ base ** abs(c)
        return out

    def k_root(self, i):
        return self.k_of(self.lattice.coordinates(self.datum.simple_roots[i]))

    def letter_matrices(self):
        """Matrices for the simple-generator letters of the presentation's alphabet."""
        pres = self.presentation
        a = pres.alphabet
        out = {}
        for i in range(self.datum.rank):
            out[next(iter(pres.E(i).terms))[0]] = self.matrices[f"E{i + 1}"]
            out[next(iter(pres.F(i).terms))[0]] = self.matrices[f"F{i + 1}"]
            out[a.k(i)] = self.matrices[f"K{i + 1}"]
            out[a.kbar(i)] = self.k_inverse(i)
        return out

    def evaluate(self, element, letters=None):
        letters = letters or self.letter_matrices()
        total = CycloMatrix.zero(self.level, self.dim)
        for w, c in element.terms.items():
            term = CycloMatrix.identity(self.level, self.dim)
            for x in w:
                if x not in letters:
                    raise RepresentationError(f"no matrix for letter {self.presentation.alphabet.name(x)}")
                term = term @ letters[x]
            total = total + term.scale(c)
        return total

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "representation",
            "name": self.name,
            "type": self.datum.type,
            "rank": self.datum.rank,
            "ell": self.ell,
            "level": self.level,
            "lattice_basis": [list(v) for v in self.lattice.basis],
            "matrices": {g: m.to_json() for g, m in sorted(self.matrices.items())},
        }

    @classmethod
    def from_json(cls, doc):
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise RepresentationError(f"unsupported schema version {doc.get('schema_version')}")
        datum = build_root_datum(doc["type"], doc["rank"])
        lattice = IsoLattice(datum, doc["lattice_basis"])
        level = doc["level"]
        mats = {g: CycloMatrix.from_json(level, m) for g, m in doc["matrices"].items()}
        return cls(lattice, doc["ell"], level, mats, doc.get("name", ""))

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


@dataclass
class RelationReport:
    passed: bool
    residuals: list  # (label, nonzero residual matrix)
    checked: int

    def failed_labels(self):
        return [lab for lab, _ in self.residuals]


def verify_relations(rep):
    """Substitute the matrices into every defining relation; exact zero test."""
    for b in range(rep.datum.rank):
        rep.k_inverse(b)
    letters = rep.letter_matrices()
    residuals = []
    rels = rep.presentation.defining_relations()
    for label, el in rels:
        r = rep.evaluate(el, letters)
        if not r.is_zero():
            residuals.append((label, r))
    return RelationReport(not residuals, residuals, len(rels))


# -- l-characters ----------------------------------------------------------------


def _root_vector_matrices(rep):
    """Matrices of ``E_g`` and ``F_g`` for every positive root."""
    datum = rep.datum
    n = datum.rank
    zero = CycloMatrix.zero(rep.level, rep.dim)
    simple_e = [rep.matrices[f"E{i + 1}"] for i in range(n)]
    simple_f = [rep.matrices[f"F{i + 1}"] for i in range(n)]
    if all(m.is_zero() for m in simple_e + simple_f):
        return {r: zero for r in datum.positive_roots}, {r: zero for r in datum.positive_roots}
    check_supported(datum)
    pres = rep.presentation
    letters = rep.letter_matrices()
    e_mats, f_mats = {}, {}
    vectors = pres.composite_root_vectors()
    for root in sorted(datum.positive_roots, key=sum):
        e_letter, f_letter = pres.root_letters(root)
        if sum(root) > 1:
            x, y, _ = vectors[root]
            letters[e_letter] = rep.evaluate(x, letters)
            letters[f_letter] = rep.evaluate(y, letters)
        e_mats[root] = letters[e_letter]
        f_mats[root] = letters[f_letter]
    return e_mats, f_mats


def _scalar_power(m, ell, what):
    s = (m**ell).scalar_value()
    if s is None:
        raise RepresentationError(
            f"{what}^{ell} is not scalar: not an l-character-homogeneous module"
        )
    return s


def l_character_of(rep):
    """``(LCharacter, central)`` read off from the ``ell``-th powers of the generators."""
    e_mats, f_mats = _root_vector_matrices(rep)
    ell = rep.ell
    e_vals = {r: _scalar_power(m, ell, f"E{list(r)}") for r, m in e_mats.items()}
    f_vals = {r: _scalar_power(m, ell, f"F{list(r)}") for r, m in f_mats.items()}
    k_vals = tuple(
        _scalar_power(rep.matrices[f"K{b + 1}"], ell, f"K{b + 1}") for b in range(rep.datum.rank)
    )
    eta = LCharacter(rep.level, e_vals, f_vals, k_vals)
    return eta, eta.is_central(rep.lattice)


# -- irreducibility --------------------------------------------------------------


def _flat(m):
    return list(m.entries)


def span_dimension(rep, limit=None):
    """Dimension of the algebra generated by the representing matrices."""
    return _span(rep, limit).dim


def _span(rep, limit=None):
    n = rep.dim
    gens = list(rep.matrices.values()) + [rep.k_inverse(b) for b in range(rep.datum.rank)]
    span = SpanBuilder()
    ident = CycloMatrix.identity(rep.level, n)
    span.add(_flat(ident))
    frontier = [ident]
    cap = limit or n * n
    while frontier and span.dim < cap:
        nxt = []
        for m in frontier:
            for g in gens:
                p = g @ m
                if span.add(_flat(p)):
                    nxt.append(p)
                    if span.dim >= cap:
                        break
        frontier = nxt
    return span


def _orbit_dim(rep, span, v):
    """Dimension of ``A v`` where ``A`` is the spanned matrix algebra."""
    n = rep.dim
    out = SpanBuilder()
    for _, b in span.basis:
        out.add([sum((b[i * n + j] * v[j] for j in range(n)), CycloNum.zero(rep.level)) for i in range(n)])
    return out.dim


def is_absolutely_irreducible(rep):
    """``"yes"`` (Burnside), ``"no"`` (invariant subspace found) or ``"undetermined"``."""
    n = rep.dim
    span = _span(rep)
    if span.dim == n * n:
        return "yes"
    level = rep.level
    zero, one = CycloNum.zero(level), CycloNum.one(level)
    for i in range(n):
        e = [one if j == i else zero for j in range(n)]
        if _orbit_dim(rep, span, e) < n:
            return "no"
    # invariant subspaces of the transposed algebra give quotients of the module
    transposed = SpanBuilder()
    for _, b in span.basis:
        transposed.add([b[j * n + i] for i in range(n) for j in range(n)])
    for i in range(n):
        e = [one if j == i else zero for j in range(n)]
        if _orbit_dim(rep, transposed, e) < n:
            return "no"
    return "undetermined"


# -- the K_alpha^2 = id implication ---------------------------------------------------


@dataclass
class TrickReport:
    passed: bool
    hypothesis_roots: list
    violations: list


def trick_check(rep):
    """For simple ``a`` with ``E_a`` or ``F_a`` acting by zero, check ``K_a^2 = id`` and its consequences."""
    datum = rep.datum
    n = datum.rank
    ident = CycloMatrix.identity(rep.level, rep.dim)
    violations, hyp = [], []
    e_mats = f_mats = None
    for i in range(n):
        e, f = rep.matrices[f"E{i + 1}"], rep.matrices[f"F{i + 1}"]
        if not (e.is_zero() or f.is_zero()):
            continue
        hyp.append(i)
        k2 = rep.k_root(i) @ rep.k_root(i)
        if k2 != ident:
            violations.append(f"E{i + 1} or F{i + 1} acts by zero but K_a{i + 1}^2 != id")
            continue
        if e_mats is None:
            try:
                e_mats, f_mats = _root_vector_matrices(rep)
            except UnsupportedRankError:
                e_mats, f_mats = {}, {}
        alpha = tuple(int(j == i) for j in range(n))
        for root in datum.positive_roots:
            if datum.root_form(alpha, root) % rep.ell == 0:
                continue
            for tag, mats in (("E", e_mats), ("F", f_mats)):
                m = mats.get(root)
                if m is not None and not m.is_zero():
                    violations.append(f"K_a{i + 1}^2 = id but {tag}{list(root)} acts nontrivially")
    return TrickReport(not violations, hyp, violations)


# -- built-in modules ------------------------------------------------------------------


def sl3_showcase(ell=3):
    """The 3-dimensional irreducible module of ``U_eps^Lambda(sl_3)`` at ``ell = 3``.

    Field level 9, ``z = zeta_9^2`` (so ``z^3 = eps^2``), lattice basis
    ``(lambda_1, alpha_1)``.
    """
    if ell != 3:
        raise RepresentationError("the built-in sl3 module exists for ell = 3 only")
    level = 9
    datum = build_root_datum("A", 2)
    lattice = IsoLattice(datum, [(1, 0), datum.simple_roots[0]], "Λ")
    z = root_of_unity(level, 2)
    eps = root_of_unity(level, 3)
    one = CycloNum.one(level)
    unit = lambda i, j: CycloMatrix.unit(level, 3, i, j)  # noqa: E731
    mats = {
        "E1": unit(1, 2),
        "E2": unit(2, 0),
        "F1": unit(2, 1),
        "F2": unit(0, 2),
        "K1": CycloMatrix.diagonal(level, [z, z ** -2, z]),
        "K2": CycloMatrix.diagonal(level, [one, eps, eps**2]),
    }
    return Representation(lattice, ell, level, mats, "sl3-showcase")


def trivial_representation(lattice, ell, level=None, dim=1):
    """Direct sum of ``dim`` copies of the counit module."""
    level = level or ell
    n = lattice.datum.rank
    zero = CycloMatrix.zero(level, dim)
    ident = CycloMatrix.identity(level, dim)
    mats = {}
    for i in range(n):
        mats[f"E{i + 1}"] = zero
        mats[f"F{i + 1}"] = zero
        mats[f"K{i + 1}"] = ident
    return Representation(lattice, ell, level, mats, "counit" if dim == 1 else f"counit^{dim}")


# -- central characters and 1-dimensional modules ----------------------------------------


def _m_and_d(lattice, ell):
    m = lattice.index_over_root_lattice()
    return m, gcd(ell, m)


def central_small_module_exists(lattice, ell, z_order):
    """Whether a 1-dimensional module exists for a central character whose group element has order ``z_order``."""
    if ell % 2 == 0 or ell < 1:
        raise ValueError(f"ell must be odd, got {ell}")
    exponent = center_exponent(lattice)
    if z_order < 1 or exponent % z_order:
        raise ValueError(
            f"order {z_order} is not the order of an element of the center (exponent {exponent})"
        )
    m, d = _m_and_d(lattice, ell)
    return (m // d) % z_order == 0


def default_level(lattice, ell, z_order):
    m, d = _m_and_d(lattice, ell)
    return lcm(ell, 2 * d * z_order)


def construct_central_one_dim(lattice, ell, z_value):
    """1-dimensional module with ``K_a -> 1`` (``a`` simple, ``a != a_n``) and ``K_{lambda_M} -> xi``.

    ``z_value`` is ``lambda_M(z)``; ``xi`` is the least power of ``zeta_L`` with
    ``xi^(2d) = z_value^a`` where ``d = a ell + b m``. The lattice basis of the
    result is ``(lambda_M, a_1, ..., a_{n-1})``.
    """
    datum = lattice.datum
    level = z_value.level
    if level % ell:
        raise RepresentationError(f"field level {level} must be a multiple of ell={ell}")
    t = z_value.root_exponent()
    if t is None:
        raise RepresentationError("z value must be a root of unity")
    z_order = level // gcd(level, t)
    m, d = _m_and_d(lattice, ell)
    if not central_small_module_exists(lattice, ell, z_order):
        raise NoSmallModuleError(
            f"no 1-dimensional module: order {z_order} does not divide m/d = {m // d}"
        )
    if z_order == 1:
        try:
            basis = cyclic_generator_basis(lattice).basis
        except ValueError:
            basis = lattice.basis
        return trivial_representation(lattice.with_basis(basis), ell, level)
    try:
        lambda_generator(datum)
    except ValueError:
        raise UnsupportedRankError(
            f"explicit construction needs a cyclic generator (types A and E6), not {datum.label}"
        ) from None
    basis_lattice = cyclic_generator_basis(lattice)
    g, a, _ = _ext_gcd(ell, m)
    assert g == d
    # solve 2 d k = a t (mod level)
    target = (a * t) % level
    k = next((k for k in range(level) if (2 * d * k - target) % level == 0), None)
    if k is None:
        need = default_level(lattice, ell, z_order)
        raise RepresentationError(
            f"field level {level} too small for xi; level {lcm(level, need)} is needed"
        )
    xi = root_of_unity(level, k)
    n = datum.rank
    zero = CycloMatrix.zero(level, 1)
    mats = {}
    for i in range(n):
        mats[f"E{i + 1}"] = zero
        mats[f"F{i + 1}"] = zero
        mats[f"K{i + 1}"] = CycloMatrix.diagonal(level, [xi if i == 0 else CycloNum.one(level)])
    return Representation(basis_lattice, ell, level, mats, f"central-1dim(order {z_order})")


def _ext_gcd(a, b):
    """``(g, x, y)`` with ``g = gcd(a, b) = a x + b y``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def central_k_value(rep):
    """``eta(K_{mu_1}^{2 ell})``, the value of the first basis weight on the group element."""
    eta, _ = l_character_of(rep)
    return eta.k_values[0] ** 2


def builtin_representation(name):
    if name == "sl3-showcase":
        return sl3_showcase()
    if name == "counit":
        datum = build_root_datum("A", 1)
        return trivial_representation(root_lattice(datum), 3)
    raise RepresentationError(f"unknown built-in representation {name!r}")
