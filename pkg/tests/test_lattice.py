from itertools import combinations, product
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from qenvelope import lattice as lt
from qenvelope.lattice import (
    IsoLattice,
    center_exponent,
    enumerate_intermediate_lattices,
    hermite_normal_form,
    index,
    integer_kernel,
    iso_rank,
    k_map_image_order,
    k_map_is_iso,
    lambda_generator,
    cyclic_generator_basis,
    perp_sublattice,
    predicted_iso_rank,
    root_lattice,
    smith_invariants,
    smith_normal_form,
    weight_lattice,
)
from qenvelope.rootdata import build_root_datum

TYPES_7 = (
    [("A", n) for n in range(1, 8)]
    + [("B", n) for n in range(2, 8)]
    + [("C", n) for n in range(3, 8)]
    + [("D", n) for n in range(4, 8)]
    + [("E", 6), ("E", 7), ("F", 4), ("G", 2)]
)

int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def abs_det(m):
    return abs(int(sympy.Matrix(m).det()))


def diag(m):
    return [m[i][i] for i in range(min(len(m), len(m[0])))]


# -- normal forms -------------------------------------------------------------------


def test_snf_examples():
    u, d, v = smith_normal_form([[1, 0], [0, 1]])
    assert d == [[1, 0], [0, 1]] and u == d and v == d
    assert smith_normal_form([[2, 0], [0, 4]])[1] == [[2, 0], [0, 4]]
    assert smith_normal_form([[2, -1], [-1, 2]])[1] == [[1, 0], [0, 3]]


@given(int_matrices)
def test_snf_factorization_and_sympy_oracle(a):
    u, d, v = smith_normal_form(a)
    assert matmul(matmul(u, d), v) == a
    assert abs_det(u) == 1 and abs_det(v) == 1
    inv = diag(d)
    for x, y in zip(inv, inv[1:]):
        assert (y == 0) or (x != 0 and y % x == 0)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert i == j or x == 0
    oracle = [abs(int(x)) for x in diag(sympy_snf(sympy.Matrix(a), domain=sympy.ZZ).tolist())]
    assert [abs(x) for x in inv] == oracle
    assert smith_invariants(a) == inv


@given(int_matrices)
def test_hnf_is_basis_invariant(a):
    rows = [r for r in a if any(r)]
    h = hermite_normal_form(rows)
    mixed = [list(r) for r in rows]
    if len(mixed) > 1:
        mixed[0] = [x + 3 * y for x, y in zip(mixed[0], mixed[1])]
        mixed[0], mixed[1] = mixed[1], mixed[0]
    assert hermite_normal_form(mixed) == h
    assert hermite_normal_form(list(h)) == h


@given(int_matrices)
def test_integer_kernel(a):
    ker = integer_kernel(a, len(a[0]))
    for k in ker:
        assert all(sum(r[j] * k[j] for j in range(len(k))) == 0 for r in a)
    rank = sympy.Matrix(a).rank()
    assert len(ker) == len(a[0]) - rank


# -- intermediate lattices -------------------------------------------------------------

COUNTS = {("A", 2): 2, ("A", 3): 3, ("D", 4): 5, ("D", 5): 3, ("E", 6): 2, ("E", 7): 2, ("A", 7): 4, ("D", 6): 5}


@pytest.mark.parametrize("t,count", sorted(COUNTS.items()))
def test_lattice_counts(t, count):
    assert len(enumerate_intermediate_lattices(build_root_datum(*t))) == count


@pytest.mark.parametrize("kind,n", TYPES_7)
def test_lattice_invariants(kind, n):
    d = build_root_datum(kind, n)
    lats = enumerate_intermediate_lattices(d)
    q, lam = lats[0], lats[-1]
    assert q == root_lattice(d) and lam == weight_lattice(d)
    assert len(set(lats)) == len(lats)
    for m in lats:
        assert all(m.contains(a) for a in d.simple_roots)
        assert m.index_in_weight_lattice() == abs_det(m.matrix)
        assert m.index_over_root_lattice() * m.index_in_weight_lattice() == q.index_in_weight_lattice()
        for nn in lats:
            if m.is_sublattice_of(nn):
                assert index(m, nn) * index(q, m) == index(q, nn)


def test_lambda_generator():
    assert tuple(lambda_generator(build_root_datum("A", 2))) == (1, 0)
    assert tuple(lambda_generator(build_root_datum("E", 6))) == (0, 0, 1, 0, -1, 0)
    d = build_root_datum("A", 2)
    q = root_lattice(d)
    gen = IsoLattice(d, [(3, 0), d.simple_roots[0]])
    assert gen == q and index(gen, q) == 1


@pytest.mark.parametrize("t", [("A", n) for n in range(1, 8)] + [("E", 6)])
def test_cyclic_generator_basis(t):
    d = build_root_datum(*t)
    for m in enumerate_intermediate_lattices(d):
        assert cyclic_generator_basis(m) == m


def test_lattice_rejects_bad_bases():
    d = build_root_datum("A", 2)
    with pytest.raises(ValueError):
        IsoLattice(d, [(1, 0)])
    with pytest.raises(ValueError):
        IsoLattice(d, [(3, 0), (0, 3)])  # does not contain Q


# -- isogeny comparison ----------------------------------------------------------------------


def image_order_oracle(m, n, ell):
    """Enumerate M/ell M and count distinct images in N/ell N."""
    cols = [n.coordinates(v) for v in m.basis]
    rank = len(cols)
    seen = set()
    for x in product(range(ell), repeat=rank):
        seen.add(tuple(sum(x[k] * cols[k][i] for k in range(rank)) % ell for i in range(rank)))
    return len(seen)


def test_image_order_examples():
    d = build_root_datum("A", 2)
    q, lam = root_lattice(d), weight_lattice(d)
    for ell in (3, 5, 7):
        assert k_map_image_order(q, q, ell) == ell**2
    assert k_map_image_order(q, lam, 3) == 3 == image_order_oracle(q, lam, 3)
    assert k_map_image_order(q, lam, 5) == 25 == image_order_oracle(q, lam, 5)
    assert not k_map_is_iso(q, lam, 3)
    assert k_map_is_iso(q, lam, 5)
    assert k_map_is_iso(lam, lam, 3)
    assert iso_rank(q, lam, 3) == 3 and iso_rank(q, lam, 7) == 1
    e6 = build_root_datum("E", 6)
    assert iso_rank(root_lattice(e6), weight_lattice(e6), 15) == 3


@pytest.mark.parametrize("t", [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("D", 4)])
@pytest.mark.parametrize("ell", [3, 5, 9])
def test_image_order_against_enumeration(t, ell):
    d = build_root_datum(*t)
    if ell ** d.rank > 10**4:
        pytest.skip("enumeration too large")
    lats = enumerate_intermediate_lattices(d)
    for m, n in product(lats, repeat=2):
        if m.is_sublattice_of(n):
            assert k_map_image_order(m, n, ell) == image_order_oracle(m, n, ell)
            assert k_map_image_order(m, n, ell) == lt.brute_force_image_order(m, n, ell)


def test_semisimple_factors():
    a1, a2 = build_root_datum("A", 1), build_root_datum("A", 2)
    ms = [root_lattice(a1), root_lattice(a2)]
    ns = [weight_lattice(a1), weight_lattice(a2)]
    assert iso_rank(ms, ns, 3) == 3 == predicted_iso_rank(ms, ns, 3)
    assert iso_rank(ms, ns, 15) == 3
    assert k_map_image_order(ms, ns, 5) == 5**3
    with pytest.raises(ValueError):
        iso_rank(ms, ns[:1], 3)


def test_not_a_sublattice():
    d = build_root_datum("A", 2)
    with pytest.raises(ValueError):
        iso_rank(weight_lattice(d), root_lattice(d), 3)


@given(st.sampled_from(TYPES_7), st.sampled_from([3, 5, 7, 9, 15, 25]), st.data())
def test_rank_formula_property(t, ell, data):
    d = build_root_datum(*t)
    lats = enumerate_intermediate_lattices(d)
    pairs = [(m, n) for m in lats for n in lats if m.is_sublattice_of(n)]
    m, n = data.draw(st.sampled_from(pairs))
    assert iso_rank(m, n, ell) == gcd(ell, index(m, n))
    assert k_map_is_iso(m, n, ell) == (gcd(index(m, n), ell) == 1)


# -- Levi splitting ----------------------------------------------------------------------------


def test_perp_examples():
    a2 = build_root_datum("A", 2)
    q, lam = root_lattice(a2), weight_lattice(a2)
    assert perp_sublattice(q, (0,)) == ((0, 3),)  # alpha1 + 2 alpha2 in weight coordinates
    assert a2.weight_to_root((0, 3)) == (1, 2)
    assert perp_sublattice(lam, (0,)) == ((0, 1),)
    assert perp_sublattice(lam, (0, 1)) == ()
    a3 = build_root_datum("A", 3)
    assert set(perp_sublattice(weight_lattice(a3), (1,))) == {(1, 0, 0), (0, 0, 1)}
    assert lt.levi_splitting_index(lam, (0,)) == 2
    assert lt.levi_splitting_index(q, (0,)) == 2
    for m in (q, lam):
        assert lt.levi_splitting_index(m, ()) == 1


@pytest.mark.parametrize("kind,n", TYPES_7)
def test_levi_exponent_divides_determinant(kind, n):
    d = build_root_datum(kind, n)
    subsets = [s for k in range(n + 1) for s in combinations(range(n), k)]
    if len(subsets) > 40:
        subsets = subsets[:: len(subsets) // 40]
    for m in enumerate_intermediate_lattices(d):
        for s in subsets:
            det = lt.symmetrized_levi_determinant(d, s)
            assert det % lt.levi_splitting_exponent(m, s) == 0
            assert lt.levi_splitting_index(m, s) % lt.levi_splitting_exponent(m, s) == 0
            form = [[d.form[i][j] for j in s] for i in s]
            assert det == (abs_det(form) if s else 1)


def test_center_exponent():
    assert center_exponent(weight_lattice(build_root_datum("D", 4))) == 2
    assert center_exponent(weight_lattice(build_root_datum("A", 5))) == 6
    assert center_exponent(weight_lattice(build_root_datum("D", 5))) == 4
