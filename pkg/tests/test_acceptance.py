"""Acceptance suite: eight exact checks, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from itertools import product
from math import gcd

import pytest
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from qenvelope.cyclo import epsilon, q_binomial, q_int, root_of_unity
from qenvelope.lattice import (
    center_exponent,
    enumerate_intermediate_lattices,
    index,
    iso_rank,
    k_map_image_order,
    k_map_is_iso,
    weight_lattice,
    root_lattice,
)
from qenvelope.orbits import (
    dckp_bound,
    induced_orbit_dim,
    levi_subset_from_blocks,
    nilpotent_orbit_dim_A,
    partitions,
    richardson_levi_A,
    small_module_ledger_A,
)
from qenvelope.pbw import ReducedAlgebra, count_character_lifts
from qenvelope.reps import (
    NoSmallModuleError,
    central_small_module_exists,
    construct_central_one_dim,
    default_level,
    is_absolutely_irreducible,
    l_character_of,
    sl3_showcase,
    span_dimension,
    verify_relations,
)
from qenvelope.rootdata import b_bound, build_root_datum

RANK7_TYPES = (
    [("A", n) for n in range(1, 8)]
    + [("B", n) for n in range(2, 8)]
    + [("C", n) for n in range(3, 8)]
    + [("D", n) for n in range(4, 8)]
    + [("E", 6), ("E", 7), ("F", 4), ("G", 2)]
)


def _pairs(datum):
    lats = enumerate_intermediate_lattices(datum)
    return [(m, n) for m in lats for n in lats if m.is_sublattice_of(n)]


# -- the criteria; each returns (ok, detail) ----------------------------------------------


def isogeny_rank_sweep():
    checked, bad = 0, []
    for kind, n in RANK7_TYPES:
        d = build_root_datum(kind, n)
        for m, nn in _pairs(d):
            for ell in (3, 5, 7, 9, 15, 25):
                if kind == "G" and ell % 3 == 0:
                    continue  # the standing hypothesis excludes these
                image = k_map_image_order(m, nn, ell)
                q = index(m, nn)
                computed = ell**n // image
                ok = ell**n % image == 0 and computed == iso_rank(m, nn, ell) == gcd(ell, q)
                ok = ok and k_map_is_iso(m, nn, ell) == (gcd(q, ell) == 1)
                checked += 1
                if not ok:
                    bad.append((d.label, m.label(), nn.label(), ell))
    return not bad, f"{checked} (type, M, N, ell) cases" + (f"; failures {bad[:5]}" if bad else "")


def pbw_dimensions():
    out, ok = [], True
    for kind, n, ell, want in (("A", 1, 3, 27), ("A", 1, 5, 125), ("A", 2, 3, 6561), ("B", 2, 3, 59049)):
        d = build_root_datum(kind, n)
        alg = ReducedAlgebra(root_lattice(d), ell)
        confluent = alg.is_confluent()
        count = alg.reduced_dimension()
        good = confluent and count == want == ell**d.dim
        ok = ok and good
        out.append(f"{d.label}/l={ell}: {count}{'' if good else ' (expected ' + str(want) + ')'}")
    return ok, ", ".join(out)


def sl3_module():
    rep = sl3_showcase()
    report = verify_relations(rep)
    span = span_dimension(rep)
    eta, central = l_character_of(rep)
    k6 = eta.k_values[0] ** 2
    ok = (
        report.passed
        and not report.residuals
        and span == 9
        and is_absolutely_irreducible(rep) == "yes"
        and central
        and k6 == epsilon(3, rep.level)
    )
    return ok, f"{report.checked} relations, span {span}, central={central}, eta(K^6)=eps: {k6 == epsilon(3, rep.level)}"


def central_character_grid():
    data = [build_root_datum("A", n) for n in range(1, 5)] + [build_root_datum("E", 6)]
    cases, bad = 0, []
    for d in data:
        for lattice in enumerate_intermediate_lattices(d):
            exp = center_exponent(lattice)
            m = lattice.index_over_root_lattice()
            for ell in (3, 5, 9, 15):
                for z_order in (o for o in range(1, exp + 1) if exp % o == 0):
                    decision = central_small_module_exists(lattice, ell, z_order)
                    expected = (m // gcd(ell, m)) % z_order == 0
                    level = default_level(lattice, ell, z_order)
                    for u in (u for u in range(1, z_order + 1) if gcd(u, z_order) == 1):
                        z = root_of_unity(level, (level // z_order) * u)
                        cases += 1
                        try:
                            rep = construct_central_one_dim(lattice, ell, z)
                        except NoSmallModuleError:
                            built = False
                        else:
                            built = True
                            eta, central = l_character_of(rep)
                            if not (verify_relations(rep).passed and central and eta.k_values[0] ** 2 == z):
                                bad.append((d.label, lattice.label(), ell, z_order, "round trip"))
                        if not decision == expected == built:
                            bad.append((d.label, lattice.label(), ell, z_order, decision, built))
    a2 = build_root_datum("A", 2)
    negative = not central_small_module_exists(weight_lattice(a2), 3, 3)
    ok = not bad and negative
    return ok, f"{cases} cases, A2/Λ/l=3/order 3 has none: {negative}" + (f"; failures {bad[:5]}" if bad else "")


def _centralizer_dim(parts):
    k = sum(parts)
    jordan = [[0] * k for _ in range(k)]
    pos = 0
    for p in parts:
        for i in range(p - 1):
            jordan[pos + i][pos + i + 1] = 1
        pos += p
    rows = []
    for a in range(k):
        for b in range(k):
            row = [0] * (k * k)
            for c in range(k):
                row[c * k + b] += jordan[a][c]
                row[a * k + c] -= jordan[c][b]
            rows.append(row)
    return k * k - DomainMatrix.from_list(rows, QQ).rank()


def orbit_identities():
    bad = []
    count = 0
    for k in range(1, 9):
        for parts in partitions(k):
            count += 1
            dim = nilpotent_orbit_dim_A(parts)
            if dim != k * k - _centralizer_dim(parts):
                bad.append(("centralizer", parts))
            if k > 1:
                datum = build_root_datum("A", k - 1)
                subset = levi_subset_from_blocks(richardson_levi_A(parts))
                if induced_orbit_dim(datum, subset, 0) != dim:
                    bad.append(("induction", parts))
    ledgers = 0
    for n in range(2, 8):
        for ell in (5, 7):
            for parts in partitions(n + 1):
                rep = small_module_ledger_A(n, ell, tuple(range(n)), [parts])
                ledgers += 1
                if not (rep.dims_match and rep.module_dim == dckp_bound(ell, nilpotent_orbit_dim_A(parts))):
                    bad.append(("ledger", n, ell, parts))
    return not bad, f"{count} partitions, {ledgers} ledgers" + (f"; failures {bad[:5]}" if bad else "")


def b_bound_table():
    columns = {
        "A_n": all(b_bound("A", n) == n + 1 for n in range(1, 9)),
        "B_n": all(b_bound("B", n) == n for n in range(2, 9)),
        "C_n": all(b_bound("C", n) == n for n in range(3, 9)),
        "D_n": all(b_bound("D", n) == n for n in range(4, 9)),
        "E6": b_bound("E", 6) == 6,
        "E7": b_bound("E", 7) == 7,
        "E8": b_bound("E", 8) == 8,
        "F4": b_bound("F", 4) == 3,
        "G2": b_bound("G", 2) == 3,
    }
    bad = [c for c, good in columns.items() if not good]
    return not bad, f"{len(columns)} columns" + (f"; mismatched {bad}" if bad else "")


def character_lifts():
    cases, bad = 0, []
    for n in (1, 2, 3):
        d = build_root_datum("A", n)
        for m, nn in _pairs(d):
            q = index(m, nn)
            for order in (1, 2, 3, 5):
                level = order * q
                for u in product(range(order), repeat=n):
                    if order > 2 and n == 3 and sum(u) % 2:
                        continue  # thin the largest sweep
                    values = [root_of_unity(level, (level // order) * x) for x in u]
                    cases += 1
                    got = count_character_lifts(m, nn, 3, values)
                    if got != q:
                        bad.append((d.label, m.label(), nn.label(), u, got))
    return not bad, f"{cases} torsion characters" + (f"; failures {bad[:5]}" if bad else "")


def q_combinatorics():
    bad = []
    for ell in range(3, 26, 2):
        e = epsilon(ell)
        if not q_int(ell, e).is_zero():
            bad.append(("[l]", ell))
        for dd in range(1, ell):
            if not q_binomial(ell, dd, e).is_zero():
                bad.append(("binom", ell, dd))
    rng = random.Random(20240607)
    for _ in range(200):
        ell = rng.choice([3, 5, 7, 9, 15, 25])
        e = epsilon(ell)
        c = rng.randint(2, 30)
        dd = rng.randint(1, c - 1)
        lhs = q_binomial(c, dd, e)
        rhs = e ** (c - dd) * q_binomial(c - 1, dd - 1, e) + e ** (-dd) * q_binomial(c - 1, dd, e)
        if lhs != rhs:
            bad.append(("pascal", ell, c, dd))
    return not bad, "odd l in 3..25 plus 200 random q-Pascal instances" + (f"; failures {bad[:5]}" if bad else "")


CRITERIA = [
    ("1 isogeny rank sweep", isogeny_rank_sweep),
    ("2 PBW dimension", pbw_dimensions),
    ("3 explicit sl3 module", sl3_module),
    ("4 central-character grid", central_character_grid),
    ("5 orbit/ledger identities", orbit_identities),
    ("6 b-bound table", b_bound_table),
    ("7 character lifting", character_lifts),
    ("8 q-combinatorics", q_combinatorics),
]


def run_criterion(name, fn):
    start = time.perf_counter()
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail} [{time.perf_counter() - start:.1f}s]"
    return ok, line


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, line = run_criterion(name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(name, fn) for name, fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
