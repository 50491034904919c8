import itertools
from fractions import Fraction

import numpy as np
import pytest

from ccs_tqft import (
    ALL_CHECKS,
    Group,
    builtin,
    c_func,
    c_table,
    check_class_count,
    check_commuting_fraction_prop,
    check_pants_move_1,
    check_pants_move_2,
    check_torus_identity,
    class_size_via_c,
    conj_class_count_via_c,
    d_func,
    d_table,
    invariant_matrix,
    make_cyclic,
    make_symmetric,
    p_func,
    p_table,
    run_all_checks,
)

import oracles
from oracles import test_groups

GROUPS = test_groups()
S3, Q8, D4 = GROUPS["S3"], GROUPS["Q8"], GROUPS["D4"]


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_functions_match_oracle(name):
    g = GROUPS[name]
    n = g.order
    ct, pt, dt = c_table(g), p_table(g), d_table(g)
    for a in range(n):
        assert d_func(g, a) == dt[a] == (1 if a == g.identity else 0)
    for a, b in itertools.product(range(n), repeat=2):
        assert c_func(g, a, b) == ct[a, b] == oracles.C(g, a, b)
    triples = list(itertools.product(range(n), repeat=3))
    for a, b, c in triples[:: max(1, len(triples) // 80)]:
        assert p_func(g, a, b, c) == pt[a, b, c] == oracles.P(g, a, b, c)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_surface_counts_match_functions(name):
    g = GROUPS[name]
    n = g.order
    disk = invariant_matrix(g, builtin("disk_in")).entries
    cyl = invariant_matrix(g, builtin("cylinder")).entries
    pants = invariant_matrix(g, builtin("pants")).entries
    pt = p_table(g)
    for a in range(n):
        assert disk[0, a] == n * d_func(g, a)
    for a, b in itertools.product(range(n), repeat=2):
        assert cyl[b, a] == c_func(g, a, b)
    for a, i, h in itertools.product(range(n), repeat=3):
        assert pants[i * n + h, a] == pt[a, i, h]


def test_examples():
    z6 = make_cyclic(6)
    for a, b in itertools.product(range(6), repeat=2):
        assert c_func(z6, a, b) == (6 if a == b else 0)
    names = {S3.element_name(a): a for a in range(6)}
    assert c_func(S3, names["213"], names["132"]) == 2
    for g in GROUPS.values():
        e = g.identity
        assert p_func(g, e, e, e) == g.order**2
        for a in range(g.order):
            centraliser = sum(1 for k in range(g.order) if g.op(k, a) == g.op(a, k))
            assert c_func(g, a, a) == centraliser
            for b in range(g.order):
                assert p_func(g, a, b, e) == g.order * c_func(g, a, b)
    assert d_func(make_cyclic(2), 1) == 0


def test_class_sizes():
    names = {S3.element_name(a): a for a in range(6)}
    assert class_size_via_c(S3, S3.identity) == 1
    assert class_size_via_c(S3, names["213"]) == 3
    assert class_size_via_c(Q8, 1) == 1  # -1 is central
    assert conj_class_count_via_c(make_cyclic(5)) == 5
    assert conj_class_count_via_c(S3) == 3
    assert conj_class_count_via_c(D4) == 5
    assert conj_class_count_via_c(Q8) == 5


def test_commuting_fraction_details():
    r = check_commuting_fraction_prop(S3)
    assert r.ok and r.detail["fraction"] == Fraction(1, 2) and r.detail["classes"] == 3
    r = check_commuting_fraction_prop(Q8)
    assert r.ok and r.detail["fraction"] == Fraction(5, 8) and r.detail["classes"] == 5
    assert check_class_count(D4).detail["classes"] == 5


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_all_checks_ok(name):
    results = run_all_checks(GROUPS[name])
    assert len(results) == len(ALL_CHECKS)
    for r in results:
        assert r.status == "ok", (r.name, r.detail)


def test_torus_identity_values():
    assert check_torus_identity(make_cyclic(2)).detail["value"] == 2**3 * 4
    assert check_torus_identity(S3).detail["value"] == 6**3 * 18


def test_pants_moves_skipped_above_cap():
    big = make_symmetric(4)
    assert check_pants_move_1(big).status == "skipped"
    assert check_pants_move_2(big).status == "skipped"
    assert check_pants_move_1(big, cap=24).ok


def _loop_group():
    # a loop with two-sided inverses that is not associative
    mul = np.array(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    return Group(mul, 0, np.array([0, 1, 2, 3, 4]))


def test_checks_report_counterexamples_on_a_loop():
    results = run_all_checks(_loop_group())
    failed = [r for r in results if r.status == "fail"]
    assert failed
    for r in failed:
        assert r.detail
        assert r.describe()
