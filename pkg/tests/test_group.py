import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccs_tqft import (
    CayleyParseError,
    Group,
    GroupError,
    commuting_fraction,
    conjugacy_classes,
    conjugate,
    direct_product,
    from_cayley_table,
    make_cyclic,
    make_dihedral,
    make_quaternion8,
    make_symmetric,
    to_cayley_table,
    validate_group,
)

from oracles import commuting_pairs, conjugacy_classes as oracle_classes, test_groups

GROUPS = test_groups()


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_constructors_validate(name):
    assert validate_group(GROUPS[name]) == []


def test_cyclic_examples():
    assert make_cyclic(1).order == 1
    assert make_cyclic(4).mul[1][3] == 0
    assert make_cyclic(6).inv[2] == 4


def test_cyclic_rejects_zero():
    with pytest.raises(ValueError):
        make_cyclic(0)


def test_orders_and_abelian():
    assert make_symmetric(3).order == 6
    assert make_symmetric(5).order == 120
    d4 = make_dihedral(4)
    assert d4.order == 8 and not d4.is_abelian()
    assert make_quaternion8().order == 8
    assert direct_product(make_cyclic(2), make_cyclic(3)).order == 6


def test_symmetric_matches_permutation_composition():
    # independent construction: compose tuples directly
    for n in (1, 2, 3, 4):
        perms = sorted(itertools.permutations(range(n)))
        g = make_symmetric(n)
        for i, p in enumerate(perms):
            for j, q in enumerate(perms):
                assert perms[g.mul[i, j]] == tuple(p[q[x]] for x in range(n))
        assert g.element_name(0) == "".join(str(x + 1) for x in range(n))


def test_dihedral_relations():
    n = 5
    g = make_dihedral(n)
    r, s = 1, n
    # s r s^-1 = r^-1
    assert conjugate(g, s, r) == g.inv[r]
    power = g.identity
    for _ in range(n):
        power = g.op(power, r)
    assert power == g.identity
    assert g.op(s, s) == g.identity


def test_quaternion_relations():
    q = make_quaternion8()
    one, minus, i, j, k = 0, 1, 2, 4, 6
    assert q.op(i, i) == q.op(j, j) == q.op(k, k) == minus
    assert q.product([i, j, k]) == minus
    assert q.op(i, j) == k and q.op(j, i) == q.op(minus, k)
    assert q.op(minus, minus) == one


def test_product_of_coprime_cyclics_is_abelian_with_six_classes():
    g = direct_product(make_cyclic(2), make_cyclic(3))
    assert g.is_abelian()
    assert len(oracle_classes(g)) == 6
    assert len(conjugacy_classes(g)) == 6


def test_product_indexing():
    a, b = make_symmetric(3), make_cyclic(4)
    g = direct_product(a, b)
    for x, y in itertools.product(range(g.order), repeat=2):
        xa, xb = divmod(x, 4)
        ya, yb = divmod(y, 4)
        assert g.mul[x, y] == a.mul[xa, ya] * 4 + b.mul[xb, yb]


def test_nested_product_valid():
    g = direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_symmetric(3))
    assert g.order == 24 and validate_group(g) == []


@pytest.mark.parametrize("bad", [0, 6])
def test_symmetric_bounds(bad):
    with pytest.raises(ValueError):
        make_symmetric(bad)


def test_dihedral_bound():
    with pytest.raises(ValueError):
        make_dihedral(1)


# ------------------------------------------------------------ Cayley files


def test_trivial_table():
    g = from_cayley_table("1\n0\n")
    assert g.order == 1 and g.identity == 0


def test_identity_need_not_be_zero():
    g = from_cayley_table("2\n1 0\n0 1\n")
    assert g.identity == 1
    assert g.op(0, 0) == 1
    assert validate_group(g) == []


def test_comments_and_blank_lines():
    g = from_cayley_table("# Z3\n3\n\n0 1 2\n# middle\n1 2 0\n2 0 1\n")
    assert g.order == 3 and g.is_abelian()


def test_roundtrip_table():
    for g in GROUPS.values():
        h = from_cayley_table(to_cayley_table(g))
        assert np.array_equal(h.mul, g.mul) and h.identity == g.identity


def test_non_associative_table_names_triple():
    # 3x3 table with identity 0: (1*1)*2 = 1*2 = 0 but 1*(1*2) = 1*0 = 1
    text = "3\n0 1 2\n1 1 0\n2 0 2\n"
    mul = np.array([[0, 1, 2], [1, 1, 0], [2, 0, 2]])
    lhs, rhs = mul[mul[1, 1], 2], mul[1, mul[1, 2]]
    assert lhs != rhs
    with pytest.raises(GroupError, match=r"triple \(1, 1, 2\)"):
        from_cayley_table(text)


def _latin_loop_5():
    # a 5-element loop (Latin square with identity) that is not a group
    return np.array(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )


def test_latin_loop_rejected():
    mul = _latin_loop_5()
    # it is a Latin square with identity 0 ...
    for row in mul:
        assert sorted(row) == list(range(5))
    for col in mul.T:
        assert sorted(col) == list(range(5))
    # ... but some triple is non-associative, found by plain loops
    bad = [
        (a, b, c)
        for a, b, c in itertools.product(range(5), repeat=3)
        if mul[mul[a, b], c] != mul[a, mul[b, c]]
    ]
    assert bad
    g = Group(mul, 0, np.zeros(5, dtype=np.int64))
    msgs = validate_group(g)
    a, b, c = bad[0]
    assert any(f"triple ({a}, {b}, {c})" in m for m in msgs)
    text = "5\n" + "\n".join(" ".join(map(str, r)) for r in mul) + "\n"
    with pytest.raises(GroupError, match="associativity"):
        from_cayley_table(text)


@pytest.mark.parametrize(
    "text",
    ["", "x\n", "2\n0 1\n", "2\n0 1\n1 z\n", "2\n0 1 0\n1 0\n", "0\n"],
)
def test_parse_errors(text):
    with pytest.raises(CayleyParseError):
        from_cayley_table(text)


def test_out_of_range_entry():
    with pytest.raises(GroupError, match="range"):
        from_cayley_table("2\n0 1\n1 2\n")


def test_missing_identity():
    with pytest.raises(GroupError, match="identity"):
        from_cayley_table("2\n1 0\n1 0\n")


def test_order_cap():
    with pytest.raises(CayleyParseError, match="cap"):
        from_cayley_table("3\n0 1 2\n1 2 0\n2 0 1\n", max_order=2)


def test_validate_reports_bad_identity_and_inverse():
    z3 = make_cyclic(3)
    wrong_e = Group(z3.mul, 1, z3.inv)
    assert any(m.startswith("identity") for m in validate_group(wrong_e))
    wrong_inv = Group(z3.mul, 0, np.array([0, 1, 2]))
    assert any(m.startswith("inverse") for m in validate_group(wrong_inv))


# ---------------------------------------------------------- conjugacy data


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_classes_match_bruteforce(name):
    g = GROUPS[name]
    got = {frozenset(c) for c in conjugacy_classes(g).classes}
    assert got == set(oracle_classes(g))
    data = conjugacy_classes(g)
    assert sum(data.sizes) == g.order
    for a in range(g.order):
        assert a in data.classes[data.class_of[a]]


def test_class_examples():
    assert len(conjugacy_classes(make_cyclic(5))) == 5
    s3 = conjugacy_classes(make_symmetric(3))
    assert sorted(len(c) for c in s3.classes) == [1, 2, 3]
    assert len(conjugacy_classes(make_quaternion8())) == 5
    assert len(conjugacy_classes(make_dihedral(4))) == 5


def test_conjugate_examples():
    s3 = make_symmetric(3)
    names = {s3.element_name(a): a for a in range(6)}
    for h in range(6):
        assert conjugate(s3, s3.identity, h) == h
    z6 = make_cyclic(6)
    assert all(conjugate(z6, k, h) == h for k in range(6) for h in range(6))
    t, c = names["213"], names["231"]  # a transposition and a 3-cycle
    out = conjugate(s3, c, t)
    assert out != t
    assert out in (names["132"], names["321"])


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_commuting_fraction_and_burnside(name):
    g = GROUPS[name]
    frac = commuting_fraction(g)
    assert frac == Fraction(commuting_pairs(g), g.order**2)
    assert frac * g.order == len(oracle_classes(g))


def test_commuting_fraction_examples():
    assert commuting_fraction(make_cyclic(4)) == 1
    assert commuting_fraction(make_symmetric(3)) == Fraction(1, 2)
    assert commuting_pairs(make_symmetric(3)) == 18
    assert commuting_fraction(make_quaternion8()) == Fraction(5, 8)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(sorted(GROUPS)), st.data())
def test_inverse_is_involution(name, data):
    g = GROUPS[name]
    a = data.draw(st.integers(0, g.order - 1))
    assert g.inv[g.inv[a]] == a
    assert g.op(a, int(g.inv[a])) == g.identity
