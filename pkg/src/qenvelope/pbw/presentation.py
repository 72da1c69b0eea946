"""Generators and defining relations of ``U_eps^M(g)`` for a simple ``g``."""

from dataclasses import dataclass

from qenvelope.cyclo import q_binomial, root_of_unity
from qenvelope.lattice import IsoLattice
from qenvelope.pbw.ncpoly import NcElement
from qenvelope.rootdata import ConvexOrder, parabolic_reduced_word, validate_ell


class UnsupportedRankError(ValueError):
    """Exact algebra construction is only available for small ranks."""


def check_supported(datum):
    if datum.rank <= 2 or (datum.type == "A" and datum.rank == 3):
        return
    raise UnsupportedRankError(
        f"exact algebra construction supports rank <= 2 and A3, not {datum.label}"
    )


def _root_name(root):
    return "[" + ",".join(map(str, root)) + "]"


@dataclass(frozen=True)
class Alphabet:
    """Letters as integers in increasing order.

    ``F`` letters come first in reverse convex order, then ``K_1, K_1^-1,
    K_2, ...`` and finally ``E`` letters in convex order.
    """

    roots: tuple
    rank: int

    @property
    def n_roots(self):
        return len(self.roots)

    @property
    def size(self):
        return 2 * self.n_roots + 2 * self.rank

    def f(self, k):
        return self.n_roots - 1 - k

    def k(self, i):
        return self.n_roots + 2 * i

    def kbar(self, i):
        return self.n_roots + 2 * i + 1

    def e(self, k):
        return self.n_roots + 2 * self.rank + k

    def kind(self, letter):
        """``("F", k)``, ``("K", i)``, ``("Kbar", i)`` or ``("E", k)``."""
        n, r = self.n_roots, self.rank
        if letter < n:
            return "F", n - 1 - letter
        if letter < n + 2 * r:
            j = letter - n
            return ("K" if j % 2 == 0 else "Kbar"), j // 2
        return "E", letter - n - 2 * r

    def name(self, letter):
        kind, idx = self.kind(letter)
        if kind == "K":
            return f"K{idx + 1}"
        if kind == "Kbar":
            return f"K{idx + 1}^-1"
        return kind + _root_name(self.roots[idx])

    def height(self, letter):
        kind, idx = self.kind(letter)
        if kind in ("E", "F"):
            return sum(self.roots[idx])
        return 0


class QuantumPresentation:
    """Generators and relations of ``U_eps^M(g)``.

    The torus generators are ``K_mu`` for ``mu`` running over ``lattice.basis``
    together with formal inverses. ``eps`` is ``zeta_level ** (level // ell)``.
    """

    def __init__(self, lattice, ell, order=None, level=None):
        if not isinstance(lattice, IsoLattice):
            raise TypeError("lattice must be an IsoLattice")
        datum = lattice.datum
        validate_ell(ell, [(datum.type, datum.rank)])
        level = level or ell
        if level % ell:
            raise ValueError(f"field level {level} is not a multiple of ell={ell}")
        if order is None:
            order = parabolic_reduced_word(datum)
        if not isinstance(order, ConvexOrder):
            raise TypeError("order must be a ConvexOrder")
        self.datum = datum
        self.lattice = lattice
        self.ell = ell
        self.level = level
        self.order = order
        self.alphabet = Alphabet(order.positive_roots_ordered, datum.rank)
        self._simple_index = {
            i: order.index(tuple(int(j == i) for j in range(datum.rank)))
            for i in range(datum.rank)
        }
        # alpha_j expanded in the lattice basis
        self.root_coords = [lattice.coordinates(a) for a in datum.simple_roots]

    # -- scalars -------------------------------------------------------------

    def eps_power(self, k):
        return root_of_unity(self.level, (self.level // self.ell) * k)

    def eps_root(self, i):
        """``eps_alpha = eps ** ((alpha|alpha)/2)`` for the simple root ``i``."""
        return self.eps_power(self.datum.half_lengths[i])

    def basis_pairing(self, b, j):
        """``(mu_b | alpha_j)``, an integer."""
        mu = self.lattice.basis[b]
        return mu[j] * self.datum.half_lengths[j]

    def one(self):
        return NcElement.scalar(self.level, 1)

    def zero(self):
        return NcElement(self.level)

    # -- letters -------------------------------------------------------------

    def letter(self, x):
        return NcElement.word(self.level, (x,))

    def E(self, i):
        """Simple-root generator ``E_{alpha_i}``."""
        return self.letter(self.alphabet.e(self._simple_index[i]))

    def F(self, i):
        return self.letter(self.alphabet.f(self._simple_index[i]))

    def K(self, b, inverse=False):
        a = self.alphabet
        return self.letter(a.kbar(b) if inverse else a.k(b))

    def k_monomial(self, coords):
        """``K_mu`` for ``mu = sum coords[b] * mu_b``, as a normally ordered word."""
        word = []
        a = self.alphabet
        for b, c in enumerate(coords):
            word += [a.k(b)] * c if c > 0 else [a.kbar(b)] * (-c)
        return NcElement.word(self.level, word)

    def root_letters(self, root):
        k = self.order.index(tuple(root))
        return self.alphabet.e(k), self.alphabet.f(k)

    # -- relations -----------------------------------------------------------

    def defining_relations(self):
        """Labelled relations ``(label, element)`` of the presentation, each meaning ``element = 0``."""
        d = self.datum
        n = d.rank
        rels = []
        one = self.one()
        for b in range(n):
            rels.append((f"K{b + 1}*K{b + 1}^-1", self.K(b) * self.K(b, True) - one))
            rels.append((f"K{b + 1}^-1*K{b + 1}", self.K(b, True) * self.K(b) - one))
            for c in range(b + 1, n):
                for ib in (False, True):
                    for ic in (False, True):
                        x, y = self.K(b, ib), self.K(c, ic)
                        rels.append((f"[K{b + 1},K{c + 1}]", x * y - y * x))
        for b in range(n):
            for j in range(n):
                p = self.basis_pairing(b, j)
                kb, kbi = self.K(b), self.K(b, True)
                e, f = self.E(j), self.F(j)
                rels.append((f"K{b + 1}E{j + 1}", kb * e - (e * kb).scale(self.eps_power(p))))
                rels.append((f"K{b + 1}^-1E{j + 1}", kbi * e - (e * kbi).scale(self.eps_power(-p))))
                rels.append((f"K{b + 1}F{j + 1}", kb * f - (f * kb).scale(self.eps_power(-p))))
                rels.append((f"K{b + 1}^-1F{j + 1}", kbi * f - (f * kbi).scale(self.eps_power(p))))
        for i in range(n):
            for j in range(n):
                lhs = self.E(i) * self.F(j) - self.F(j) * self.E(i)
                if i == j:
                    ei = self.eps_root(i)
                    denom = (ei - ei.inverse()).inverse()
                    plus = self.k_monomial(self.root_coords[i])
                    minus = self.k_monomial([-c for c in self.root_coords[i]])
                    lhs = lhs - (plus - minus).scale(denom)
                rels.append((f"E{i + 1}F{j + 1}", lhs))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                a_ij = d.cartan[j][i]  # 2 (a_i|a_j) / (a_i|a_i)
                if a_ij == 0:
                    rels.append((f"[E{i + 1},E{j + 1}]", self.E(i) * self.E(j) - self.E(j) * self.E(i)))
                    rels.append((f"[F{i + 1},F{j + 1}]", self.F(i) * self.F(j) - self.F(j) * self.F(i)))
                    continue
                top = 1 - a_ij
                ei = self.eps_root(i)
                for gen, tag in ((self.E, "E"), (self.F, "F")):
                    s = self.zero()
                    for r in range(top + 1):
                        coeff = q_binomial(top, r, ei) * (-1) ** r
                        s = s + (gen(i) ** (top - r) * gen(j) * gen(i) ** r).scale(coeff)
                    rels.append((f"serre{tag}{i + 1}{j + 1}", s))
        return rels

    def composite_root_vectors(self):
        """``{root: (E_root, F_root)}`` for non-simple roots as q-brackets of earlier ones.

        ``E_g = -E_a E_b + eps^{(a|b)} E_b E_a`` for the closest pair ``a < g < b``
        in the convex order with ``a + b = g``; ``F_g`` is the image under the
        automorphism exchanging ``E`` and ``F`` and inverting ``K``.
        """
        check_supported(self.datum)
        roots = self.order.positive_roots_ordered
        out = {}
        for k, g in enumerate(roots):
            if sum(g) == 1:
                continue
            pairs = [
                (b - a, a, b)
                for a in range(k)
                for b in range(k + 1, len(roots))
                if all(x + y == z for x, y, z in zip(roots[a], roots[b], g))
            ]
            if not pairs:
                raise UnsupportedRankError(f"no bracket decomposition for root {g}")
            _, a, b = min(pairs)
            c = self.datum.root_form(roots[a], roots[b])
            ea, fa = self.root_letters(roots[a])
            eb, fb = self.root_letters(roots[b])
            q = self.eps_power(c)
            x = NcElement(self.level, {(ea, eb): -1, (eb, ea): q})
            y = NcElement(self.level, {(fa, fb): -1, (fb, fa): q})
            out[g] = (x, y, (roots[a], roots[b]))
        return out

    def root_vector_relations(self):
        rels = []
        for g, (x, y, _) in self.composite_root_vectors().items():
            eg, fg = self.root_letters(g)
            rels.append((f"def E{_root_name(g)}", self.letter(eg) - x))
            rels.append((f"def F{_root_name(g)}", self.letter(fg) - y))
        return rels


def sign_twist(pres, signs):
    """Substitution ``letter -> element`` of the automorphism attached to ``signs``.

    ``K_b -> signs[b] K_b``, ``F -> F`` and ``E_a -> tau_a E_a`` with ``tau_a`` the
    sign picked up by ``K_a``.
    """
    n = pres.datum.rank
    signs = tuple(signs)
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise ValueError(f"signs must be a tuple of {n} entries in {{1, -1}}")
    tau = []
    for coords in pres.root_coords:
        t = 1
        for s, c in zip(signs, coords):
            if s == -1 and c % 2:
                t = -t
        tau.append(t)
    a = pres.alphabet
    sub = {}
    for k, root in enumerate(a.roots):
        t = 1
        for j, c in enumerate(root):
            if tau[j] == -1 and c % 2:
                t = -t
        sub[a.e(k)] = pres.letter(a.e(k)).scale(t)
        sub[a.f(k)] = pres.letter(a.f(k))
    for b in range(n):
        sub[a.k(b)] = pres.K(b).scale(signs[b])
        sub[a.kbar(b)] = pres.K(b, True).scale(signs[b])
    return sub


def substitute(element, sub):
    """Apply a letter substitution to every word of ``element``."""
    total = NcElement(element.level)
    for w, c in element.terms.items():
        term = NcElement.scalar(element.level, c)
        for x in w:
            term = term * sub[x]
        total = total + term
    return total
