"""Completed rewrite systems for ``U_eps^M(g)`` and its reduced quotients."""

import json
from dataclasses import dataclass
from itertools import product
from math import gcd, lcm

from qenvelope.cyclo import CycloNum
from qenvelope.lattice import IsoLattice, smith_invariants
from qenvelope.pbw.ncpoly import NcElement
from qenvelope.pbw.presentation import QuantumPresentation, check_supported
from qenvelope.pbw.rewriting import CompletionError, RewriteSystem
from qenvelope.rootdata import build_root_datum, convex_order_from_word

SCHEMA_VERSION = 1


@dataclass(frozen=True, order=True)
class PbwMonomial:
    """``F^A K^B E^C``; ``A`` runs over roots in reverse convex order, ``C`` in convex order."""

    A: tuple
    B: tuple
    C: tuple

    def degree(self):
        return sum(self.A) + sum(self.C)


@dataclass(frozen=True)
class LCharacter:
    """Values of a character of the l-center on ``E_g^l``, ``F_g^l`` and ``K_{mu_b}^l``.

    ``e_values`` and ``f_values`` are keyed by positive roots; ``k_values`` is
    indexed by the lattice basis.
    """

    level: int
    e_values: dict
    f_values: dict
    k_values: tuple

    def __post_init__(self):
        for v in self.k_values:
            if v.is_zero():
                raise ValueError("K values of an l-character must be invertible")

    def k_value(self, coords):
        """``eta(K_mu^l)`` for ``mu`` with the given basis coordinates."""
        out = CycloNum.one(self.level)
        for v, c in zip(self.k_values, coords):
            out = out * v**c
        return out

    def is_central(self, lattice):
        if any(not v.is_zero() for v in self.e_values.values()):
            return False
        if any(not v.is_zero() for v in self.f_values.values()):
            return False
        for a in lattice.datum.simple_roots:
            if self.k_value(lattice.coordinates(a)) ** 2 != 1:
                return False
        return True

    def to_json(self):
        return {
            "level": self.level,
            "e_values": [[list(r), v.to_json()] for r, v in sorted(self.e_values.items())],
            "f_values": [[list(r), v.to_json()] for r, v in sorted(self.f_values.items())],
            "k_values": [v.to_json() for v in self.k_values],
        }

    @classmethod
    def from_json(cls, data):
        level = data["level"]
        return cls(
            level,
            {tuple(r): CycloNum.from_json(level, v) for r, v in data["e_values"]},
            {tuple(r): CycloNum.from_json(level, v) for r, v in data["f_values"]},
            tuple(CycloNum.from_json(level, v) for v in data["k_values"]),
        )


def counit_character(lattice, ell, level=None):
    """The character of the trivial module: ``E, F -> 0`` and ``K -> 1``."""
    level = level or ell
    roots = lattice.datum.positive_roots
    zero = CycloNum.zero(level)
    return LCharacter(
        level,
        {r: zero for r in roots},
        {r: zero for r in roots},
        tuple(CycloNum.one(level) for _ in range(lattice.datum.rank)),
    )


def _system_for(pres):
    a = pres.alphabet
    heights = [a.height(x) for x in range(a.size)]
    kweights = []
    for x in range(a.size):
        kind, _ = a.kind(x)
        kweights.append({"K": 1, "Kbar": pres.ell}.get(kind, 0))
    return RewriteSystem(pres.level, heights, kweights, [a.name(x) for x in range(a.size)])


def _eta_relations(pres, eta):
    a = pres.alphabet
    level = pres.level
    if eta.level != level:
        raise ValueError(f"character is over level {eta.level}, presentation over {level}")
    rels, labels = [], []
    for k, root in enumerate(a.roots):
        for letter, val in ((a.e(k), eta.e_values[root]), (a.f(k), eta.f_values[root])):
            terms = {(letter,) * pres.ell: CycloNum.one(level)}
            if val:
                terms[()] = -val
            rels.append(terms)
            labels.append(f"{a.name(letter)}^{pres.ell}")
    for b, val in enumerate(eta.k_values):
        rels.append({(a.k(b),) * pres.ell: CycloNum.one(level), (): -val})
        labels.append(f"K{b + 1}^{pres.ell}")
        rels.append({(a.kbar(b),): CycloNum.one(level), (a.k(b),) * (pres.ell - 1): -val.inverse()})
        labels.append(f"K{b + 1}^-1")
    return rels, labels


def complete_rewrite_system(pres, character=None, max_rules=5000):
    """Complete the presentation (optionally specialized at ``character``) to a confluent system."""
    check_supported(pres.datum)
    rels = pres.defining_relations() + pres.root_vector_relations()
    labels = [lab for lab, _ in rels]
    terms = [el.terms for _, el in rels]
    system = _system_for(pres)
    system.complete(terms, max_rules=max_rules, labels=labels)
    if character is not None:
        reduced = _system_for(pres)
        base = []
        for u, rhs in system.rules.items():
            t = {w: -c for w, c in rhs.items()}
            t[u] = CycloNum.one(pres.level)
            base.append(t)
        extra, extra_labels = _eta_relations(pres, character)
        reduced.complete(
            base + extra,
            max_rules=max_rules,
            labels=[f"U rule {i}" for i in range(len(base))] + extra_labels,
        )
        system = reduced
    bad = system.check_confluence()
    if bad:
        u, v, _, _ = bad[0]
        raise CompletionError(
            f"critical pair ({system._fmt(u)}, {system._fmt(v)}) does not resolve",
            (system._fmt(u), system._fmt(v)),
        )
    return system


class QuantumAlgebra:
    """``U_eps^M(g)`` with a completed rewrite system (no l-center specialization)."""

    def __init__(self, lattice, ell, order=None, level=None, system=None):
        self.pres = QuantumPresentation(lattice, ell, order, level)
        self.system = system or complete_rewrite_system(self.pres)

    @property
    def level(self):
        return self.pres.level

    @property
    def ell(self):
        return self.pres.ell

    def normal_form(self, x):
        return self.system.normal_form(x)

    def root_vector(self, root, kind="E"):
        e, f = self.pres.root_letters(root)
        return self.pres.letter(e if kind == "E" else f)

    def generators(self):
        a = self.pres.alphabet
        return [self.pres.letter(x) for x in range(a.size)]

    def is_confluent(self):
        return not self.system.check_confluence()

    def centrality_defects(self):
        """Pairs ``(X, g)`` with ``X`` an l-th power generator of the l-center not commuting with ``g``."""
        a = self.pres.alphabet
        ell = self.pres.ell
        powers = []
        for k in range(a.n_roots):
            powers += [a.e(k), a.f(k)]
        powers += [a.k(b) for b in range(self.pres.datum.rank)]
        bad = []
        for x in powers:
            big = NcElement.word(self.level, (x,) * ell)
            for g in self.generators():
                if self.normal_form(big * g - g * big):
                    bad.append((a.name(x), self.system._fmt(next(iter(g.terms)))))
        return bad


class ReducedAlgebra(QuantumAlgebra):
    """The quotient ``U_eta^M(g)`` of ``U_eps^M(g)`` by the kernel of ``eta`` on the l-center."""

    def __init__(self, lattice, ell, character=None, order=None, level=None, system=None):
        self.pres = QuantumPresentation(lattice, ell, order, level)
        self.character = character or counit_character(lattice, ell, self.pres.level)
        self.system = system or complete_rewrite_system(self.pres, self.character)

    def normal_form(self, x):
        return self.system.normal_form(x)

    def to_monomials(self, x):
        """Normal form of ``x`` as ``{PbwMonomial: coeff}``."""
        nf = self.normal_form(x)
        return {self.word_to_monomial(w): c for w, c in nf.terms.items()}

    def word_to_monomial(self, w):
        a = self.pres.alphabet
        n, r = a.n_roots, a.rank
        A, B, C = [0] * n, [0] * r, [0] * n
        last = -1
        for x in w:
            if x < last:
                raise ValueError("word is not in PBW order")
            last = x
            kind, idx = a.kind(x)
            if kind == "F":
                A[n - 1 - idx] += 1
            elif kind == "K":
                B[idx] += 1
            elif kind == "Kbar":
                B[idx] -= 1
            else:
                C[idx] += 1
        return PbwMonomial(tuple(A), tuple(B), tuple(C))

    def monomial_to_word(self, m):
        a = self.pres.alphabet
        n = a.n_roots
        w = []
        for pos, e in enumerate(m.A):
            w += [a.f(n - 1 - pos)] * e
        for b, e in enumerate(m.B):
            w += [a.k(b)] * e if e >= 0 else [a.kbar(b)] * (-e)
        for k, e in enumerate(m.C):
            w += [a.e(k)] * e
        return tuple(w)

    def monomial(self, m):
        return NcElement.word(self.level, self.monomial_to_word(m))

    def pbw_shape_ok(self):
        """Whether the leading words are exactly the out-of-order pairs, the l-th powers and ``K^-1``."""
        a = self.pres.alphabet
        ell = self.pres.ell
        expected = set()
        kbars = {a.kbar(b) for b in range(a.rank)}
        letters = [x for x in range(a.size) if x not in kbars]
        for x in letters:
            expected.add((x,) * ell)
            for y in letters:
                if y > x:
                    expected.add((y, x))
        expected |= {(x,) for x in kbars}
        return set(self.system.rules) == expected

    def reduced_dimension(self):
        return self.system.count_normal_words()

    def enumerate_normal_basis(self):
        a = self.pres.alphabet
        ell = self.pres.ell
        n, r = a.n_roots, a.rank
        if not self.pbw_shape_ok():
            raise CompletionError("normal words are not the ordered PBW monomials")
        rng = range(ell)
        return [
            PbwMonomial(A, B, C)
            for A in product(rng, repeat=n)
            for B in product(rng, repeat=r)
            for C in product(rng, repeat=n)
        ]


def reduced_dimension(alg):
    return alg.reduced_dimension()


def enumerate_normal_basis(alg):
    return alg.enumerate_normal_basis()


def normal_form(x, alg):
    return alg.to_monomials(x) if isinstance(alg, ReducedAlgebra) else alg.normal_form(x)


def expected_dimension(data, ell):
    """``ell ** dim g`` for a simple datum or a list of simple data."""
    if not isinstance(data, (list, tuple)):
        data = [data]
    out = 1
    for d in data:
        out *= ell**d.dim
    return out


# -- character lifts ----------------------------------------------------------


def count_character_lifts(m, n, ell, k_values):
    """Number of torus characters of ``N`` restricting to ``k_values`` on the basis of ``M``.

    Characters are enumerated among ``level``-th roots of unity where ``level``
    is the level of the given values; the level must be divisible by the
    orders of the values times the exponent of ``N/M``.
    """
    if not isinstance(m, IsoLattice) or not isinstance(n, IsoLattice):
        raise TypeError("lattices expected")
    if not m.is_sublattice_of(n):
        raise ValueError(f"{m.label()} is not contained in {n.label()}")
    if not k_values:
        raise ValueError("need one value per basis vector of M")
    level = k_values[0].level
    rank = m.datum.rank
    if len(k_values) != rank:
        raise ValueError(f"need {rank} values, got {len(k_values)}")
    exps = []
    for v in k_values:
        e = v.root_exponent()
        if e is None:
            raise ValueError("character values must be roots of unity")
        exps.append(e)
    # columns of P: coordinates of M's basis in N's basis
    p = [n.coordinates(v) for v in m.basis]
    exponent = 1
    for x in smith_invariants([list(r) for r in zip(*p)]):
        exponent = lcm(exponent, x)
    needed = exponent
    for e in exps:
        needed = lcm(needed, exponent * (level // gcd(level, e)))
    if level % needed:
        raise ValueError(f"field level {level} too small; level {lcm(level, needed)} is needed")
    count = 0
    for s in product(range(level), repeat=rank):
        if all(sum(pi[j] * s[j] for j in range(rank)) % level == t for pi, t in zip(p, exps)):
            count += 1
    return count


# -- persistence ----------------------------------------------------------------


def save_rewrite_system(alg, path=None):
    """JSON document describing ``alg`` and its completed rules; written to ``path`` if given."""
    pres = alg.pres
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "rewrite-system",
        "type": pres.datum.type,
        "rank": pres.datum.rank,
        "ell": pres.ell,
        "level": pres.level,
        "lattice_basis": [list(v) for v in pres.lattice.basis],
        "reduced_word": list(pres.order.reduced_word),
        "character": alg.character.to_json() if isinstance(alg, ReducedAlgebra) else None,
        "system": alg.system.to_json(),
    }
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return doc


def load_rewrite_system(source):
    """Inverse of :func:`save_rewrite_system`; accepts a path or a parsed document."""
    if isinstance(source, dict):
        doc = source
    else:
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')}")
    datum = build_root_datum(doc["type"], doc["rank"])
    lattice = IsoLattice(datum, doc["lattice_basis"])
    order = convex_order_from_word(datum, doc["reduced_word"])
    system = RewriteSystem.from_json(doc["system"])
    if doc["character"] is None:
        return QuantumAlgebra(lattice, doc["ell"], order, doc["level"], system=system)
    eta = LCharacter.from_json(doc["character"])
    return ReducedAlgebra(lattice, doc["ell"], eta, order, doc["level"], system=system)
