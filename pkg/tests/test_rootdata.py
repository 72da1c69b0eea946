from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qenvelope.rootdata import (
    b_bound,
    build_root_datum,
    convex_order_from_word,
    factorial_coprime,
    parabolic_reduced_word,
    positive_root_count,
    validate_ell,
)

ALL_TYPES = (
    [("A", n) for n in range(1, 9)]
    + [("B", n) for n in range(2, 9)]
    + [("C", n) for n in range(3, 9)]
    + [("D", n) for n in range(4, 9)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)
CLASSICAL = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
}
EXCEPTIONAL = {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}


def reflection_closure(datum):
    """Positive roots by closing the simple roots under simple reflections (form matrix only)."""
    n, form = datum.rank, datum.form
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen, todo = set(simple), list(simple)
    while todo:
        b = todo.pop()
        for i in range(n):
            c = Fraction(2 * sum(b[j] * form[j][i] for j in range(n)), form[i][i])
            r = list(b)
            r[i] -= int(c)
            r = tuple(r)
            if any(x < 0 for x in r) and any(x > 0 for x in r):
                raise AssertionError("mixed-sign root")
            if all(x >= 0 for x in r) and r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


@pytest.mark.parametrize("kind,n", ALL_TYPES)
def test_positive_roots_match_closure_and_count(kind, n):
    d = build_root_datum(kind, n)
    assert set(d.positive_roots) == reflection_closure(d)
    expected = EXCEPTIONAL.get((kind, n)) or CLASSICAL[kind](n)
    assert len(d.positive_roots) == expected == positive_root_count(kind, n)
    assert d.dim == 2 * expected + n


@pytest.mark.parametrize("kind,n", ALL_TYPES)
def test_cartan_and_form_invariants(kind, n):
    d = build_root_datum(kind, n)
    for i in range(n):
        assert d.cartan[i][i] == 2
        for j in range(n):
            if i != j:
                assert d.cartan[i][j] <= 0
            assert d.cartan[i][j] == 2 * d.form[i][j] // d.form[j][j]
    lengths = {d.root_form(r, r) for r in d.positive_roots}
    assert min(lengths) == 2
    for i, lam in enumerate(d.fundamental_weights):
        for j, a in enumerate(d.simple_roots):
            assert 2 * d.pairing(lam, a) / d.form[j][j] == (i == j)


def test_small_examples():
    a2 = build_root_datum("A", 2)
    assert set(a2.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert len(build_root_datum("A", 1).positive_roots) == 1
    g2 = build_root_datum("G", 2)
    long_roots = [r for r in g2.positive_roots if g2.is_long(r)]
    assert long_roots and all(g2.root_form(r, r) == 6 for r in long_roots)


def _is_convex(datum, order):
    pos = {r: k for k, r in enumerate(order.positive_roots_ordered)}
    for a, b in combinations(datum.positive_roots, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if s in pos:
            lo, hi = sorted((pos[a], pos[b]))
            if not lo < pos[s] < hi:
                return False
    return True


SMALL = [t for t in ALL_TYPES if t[1] <= 4]


@pytest.mark.parametrize("kind,n", SMALL)
def test_every_parabolic_order_is_convex(kind, n):
    d = build_root_datum(kind, n)
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            order = parabolic_reduced_word(d, subset)
            assert len(order.reduced_word) == len(d.positive_roots)
            assert sorted(order.positive_roots_ordered) == sorted(d.positive_roots)
            assert _is_convex(d, order)
            k = len(d.subsystem_positive_roots(subset))
            assert set(order.positive_roots_ordered[:k]) == set(d.subsystem_positive_roots(subset))
            assert set(order.reduced_word[:k]) <= set(subset)


def _reduced_words_of_longest(n):
    """All reduced words of the longest permutation of {0..n} (oracle for type A_n)."""
    target = tuple(range(n, -1, -1))
    length = n * (n + 1) // 2
    out = []

    def walk(perm, word):
        if len(word) == length:
            if perm == target:
                out.append(tuple(word))
            return
        for i in range(n):
            if perm[i] < perm[i + 1]:
                p = list(perm)
                p[i], p[i + 1] = p[i + 1], p[i]
                walk(tuple(p), word + [i])

    walk(tuple(range(n + 1)), [])
    return set(out)


def test_a3_parabolic_prefix_against_exhaustive_search():
    d = build_root_datum("A", 3)
    order = parabolic_reduced_word(d, (0, 1))
    words = _reduced_words_of_longest(3)
    assert len(words) == 16
    assert order.reduced_word in words
    assert order.reduced_word[:3] in _reduced_words_of_longest(2)


def test_a2_orders():
    d = build_root_datum("A", 2)
    order = convex_order_from_word(d, (1, 0, 1))
    assert order.positive_roots_ordered == ((0, 1), (1, 1), (1, 0))
    first = parabolic_reduced_word(d, (0,))
    assert first.reduced_word[0] == 0 and first.positive_roots_ordered[0] == (1, 0)
    with pytest.raises(ValueError):
        convex_order_from_word(d, (0, 0, 1))


@given(st.sampled_from(SMALL), st.data())
def test_reflections_are_involutions(t, data):
    d = build_root_datum(*t)
    r = data.draw(st.sampled_from(d.positive_roots))
    i = data.draw(st.integers(0, d.rank - 1))
    assert d.reflect_root(d.reflect_root(r, i), i) == tuple(r)
    w = d.root_to_weight(r)
    assert tuple(d.reflect(d.reflect(w, i), i)) == tuple(w)
    s = d.reflect_root(r, i)
    assert d.root_form(s, s) == d.root_form(r, r)


def test_b_bound_table():
    assert [b_bound(*t) for t in [("A", 5), ("B", 4), ("C", 4), ("D", 5)]] == [6, 4, 4, 5]
    assert [b_bound(*t) for t in [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]] == [6, 7, 8, 3, 3]
    for n in range(1, 9):
        assert b_bound("A", n) == n + 1


def test_validate_ell():
    assert validate_ell(5, [("A", 2)]) == 5
    with pytest.raises(ValueError):
        validate_ell(4)
    with pytest.raises(ValueError):
        validate_ell(9, [("G", 2)])
    assert validate_ell(9, [("A", 2)]) == 9
    assert factorial_coprime(7, 6) and not factorial_coprime(5, 6)
