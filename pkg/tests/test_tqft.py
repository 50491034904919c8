from fractions import Fraction

import numpy as np
import pytest

from ccs_tqft import (
    BUILTIN_NAMES,
    InvariantValue,
    TqftMatrix,
    basis_index,
    builtin,
    class_vectors_fixed,
    compose,
    disjoint_union,
    dump_matrix,
    empty_complex,
    empty_matrix,
    glue,
    half_exponent,
    invariant_matrix,
    invariant_scalar,
    is_idempotent,
    matrices_equal,
    move_I_subdivide,
    parse_matrix,
    random_walk,
    reflect,
    reflect_matrix,
    rotate,
    rotate_matrix,
    shrink_disk_tail,
    tensor,
    values_equal,
)

import oracles
from oracles import test_groups

GROUPS = test_groups()
Z2, Z3, S3, Q8 = GROUPS["Z2"], GROUPS["Z3"], GROUPS["S3"], GROUPS["Q8"]


def test_half_exponent():
    assert half_exponent(builtin("sphere_a")) == 4
    assert half_exponent(builtin("disk_out")) == 3
    assert half_exponent(builtin("cylinder")) == 2
    assert half_exponent(builtin("pants")) == 3
    assert half_exponent(builtin("punctured_torus_a")) == 3


def test_scalar_examples():
    for g in GROUPS.values():
        v = invariant_scalar(g, builtin("sphere_a"))
        assert (v.count, v.half_exponent) == (g.order, 4)
        assert v.to_fraction() == Fraction(1, g.order)
        d = invariant_scalar(g, builtin("disk_out"), ((), (g.identity,)))
        assert (d.count, d.half_exponent) == (g.order, 3)
    t = invariant_scalar(S3, builtin("torus"))
    assert (t.count, t.half_exponent) == (18, 2) and t.to_fraction() == 3


def test_values_equal_examples():
    for q in (1, 2, 5, 6):
        assert values_equal(InvariantValue(q, q, 4), InvariantValue(q, 1, 2))
    assert values_equal(InvariantValue(3, 0, 7), InvariantValue(3, 0, 2))
    assert values_equal(InvariantValue(6, 18, 2), InvariantValue(6, 3, 0))
    assert not values_equal(InvariantValue(6, 18, 2), InvariantValue(6, 18, 0))
    with pytest.raises(ValueError):
        values_equal(InvariantValue(2, 1, 0), InvariantValue(3, 1, 0))


def test_decimal_and_fraction():
    v = InvariantValue(2, 4, 3)  # 4 / 2^(3/2) = sqrt(2)
    assert v.decimal(12) == "1.41421356237"
    assert v.squared() == 2
    with pytest.raises(ValueError):
        v.to_fraction()
    assert InvariantValue(6, 6, 4).decimal() == "0.166666666667"
    assert InvariantValue(4, 16, 2).decimal() == "4"


def test_cylinder_matrix_is_c():
    z = invariant_matrix(S3, builtin("cylinder"))
    assert z.half_exponent == 2 and z.shape == (6, 6)
    for g in range(6):
        for h in range(6):
            assert z.entries[h, g] == oracles.C(S3, g, h)


def test_disk_in_row():
    z = invariant_matrix(Z2, builtin("disk_in"))
    assert z.shape == (1, 2)
    assert list(z.entries[0]) == [2, 0]


def test_pants_over_abelian():
    z = invariant_matrix(Z3, builtin("pants"))
    for g in range(3):
        for i in range(3):
            for h in range(3):
                want = 9 if g == (i + h) % 3 else 0
                assert z.entries[basis_index((i, h), 3), g] == want


def test_basis_index():
    assert basis_index((), 5) == 0
    assert basis_index((1, 2), 3) == 5
    assert basis_index((2, 0, 1), 3) == 19


def test_compose_and_tensor_errors():
    zc = invariant_matrix(Z2, builtin("cylinder"))
    zp = invariant_matrix(Z2, builtin("pants"))
    with pytest.raises(ValueError):
        compose(zc, zp)  # pants has 2 outs, cylinder 1 in
    with pytest.raises(ValueError):
        compose(invariant_matrix(Z3, builtin("cylinder")), zc)
    zd = invariant_matrix(Z2, builtin("disk_in"))
    with pytest.raises(ValueError):
        compose(invariant_matrix(Z2, builtin("torus")), zd)  # zero shared circles


def test_cylinder_idempotent_and_classes():
    for g in GROUPS.values():
        z = invariant_matrix(g, builtin("cylinder"))
        assert is_idempotent(z)
        fixed = class_vectors_fixed(g, z)
        assert len(fixed) == len(oracles.conjugacy_classes(g))
        assert all(ok for _, ok in fixed)


def test_zero_matrix_idempotent():
    z = TqftMatrix(3, 1, 1, np.zeros((3, 3), dtype=object), 2)
    assert is_idempotent(z)


def test_non_idempotent_detected():
    z = TqftMatrix(2, 1, 1, np.array([[1, 0], [0, 1]], dtype=object), 0)
    assert is_idempotent(z)
    z = TqftMatrix(2, 1, 1, np.array([[2, 0], [0, 2]], dtype=object), 0)
    assert not is_idempotent(z)


def test_glue_is_compose_structurally():
    for g in (Z2, S3):
        a, b = builtin("cylinder"), builtin("pants")
        lhs = invariant_matrix(g, glue(a, b))
        rhs = compose(invariant_matrix(g, b), invariant_matrix(g, a))
        assert lhs == rhs


def test_glue_pants_with_cylinder_and_disk_gives_cylinder():
    for g in (Z2, Z3, S3):
        m = glue(builtin("pants"), disjoint_union(builtin("cylinder"), builtin("disk_in")))
        assert matrices_equal(invariant_matrix(g, m), invariant_matrix(g, builtin("cylinder")))


def test_tensor_matches_union():
    for g in (Z2, S3):
        d = invariant_matrix(g, builtin("disk_in"))
        u = invariant_matrix(g, disjoint_union(builtin("disk_in"), builtin("disk_in")))
        assert tensor(d, d) == u
        p = invariant_matrix(g, builtin("pants"))
        c = invariant_matrix(g, builtin("cylinder"))
        assert tensor(p, c) == invariant_matrix(g, disjoint_union(builtin("pants"), builtin("cylinder")))


def test_tensor_with_empty_is_identity():
    z = invariant_matrix(S3, builtin("pants"))
    e = empty_matrix(6)
    assert tensor(z, e) == z and tensor(e, z) == z
    assert invariant_matrix(S3, empty_complex()) == e


def test_tensor_associative():
    a = invariant_matrix(Z2, builtin("cylinder"))
    b = invariant_matrix(Z2, builtin("disk_in"))
    c = invariant_matrix(Z2, builtin("pants"))
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_reflect_and_rotate_matrices(name):
    for g in (Z2, S3):
        m = builtin(name)
        z = invariant_matrix(g, m)
        assert invariant_matrix(g, reflect(m)) == reflect_matrix(z)
        assert invariant_matrix(g, rotate(m)) == rotate_matrix(z, g)
        assert invariant_matrix(g, rotate(rotate(m))) == z


def test_rotate_matrix_fixes_cylinder():
    for g in GROUPS.values():
        z = invariant_matrix(g, builtin("cylinder"))
        assert rotate_matrix(z, g) == z


def test_reduced_form():
    m = builtin("torus")
    z = invariant_matrix(S3, m)
    s = invariant_matrix(S3, move_I_subdivide(m, "a"))
    assert z != s  # raw counts and exponent both moved
    assert matrices_equal(z, s)
    assert z.reduced() == s.reduced()


def test_move_invariance_short():
    for name in BUILTIN_NAMES:
        m0 = builtin(name)
        ref = invariant_matrix(S3, m0).reduced()
        for seed in range(3):
            m, _ = random_walk(m0, 20, seed)
            z = invariant_matrix(S3, m)
            assert matrices_equal(z, invariant_matrix(S3, m0))
            assert z.reduced() == ref


def test_shrink_disk_tail_preserves_value():
    for g in GROUPS.values():
        for name in ("disk_in", "disk_out"):
            m = builtin(name)
            assert matrices_equal(invariant_matrix(g, shrink_disk_tail(m)), invariant_matrix(g, m))


def test_dump_roundtrip():
    for name in BUILTIN_NAMES:
        z = invariant_matrix(S3, builtin(name))
        text = dump_matrix(z)
        assert text.startswith(f"tqft n={z.n_in} m={z.n_out} order=6 he={z.half_exponent}\n")
        assert parse_matrix(text) == z


def test_dump_pants_z2():
    text = dump_matrix(invariant_matrix(Z2, builtin("pants")))
    assert text == "tqft n=1 m=2 order=2 he=3\n4 0\n0 4\n0 4\n4 0\n"


def test_matrix_shape_checked():
    with pytest.raises(ValueError):
        TqftMatrix(2, 1, 1, np.zeros((2, 3), dtype=object), 0)


def test_normalized_exact():
    z = invariant_matrix(S3, builtin("cylinder"))
    n = z.normalized()
    assert n[0, 0] == Fraction(1)
    with pytest.raises(ValueError):
        invariant_matrix(S3, builtin("pants")).normalized()
