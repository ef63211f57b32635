import numpy as np
import pytest

from bct import algebras as al
from bct import gf_linalg as gl
from bct import groups as gr
from bct.errors import ConstructionError
from groups_fixtures import C3, C6, group


def gf(p):
    return al.FiniteAlgebra(p, np.ones((1, 1, 1), dtype=np.int64), np.array([1]))


def elem(g, perm):
    v = np.zeros(g.order, dtype=np.int64)
    v[g.perms.index(tuple(perm))] = 1
    return v


def test_trivial_group_algebra_is_field():
    a = al.group_algebra(gr.build_group(generators=[], degree=2), 5)
    assert a.dim == 1
    assert al.radical(a).space.dim == 0


def test_c2_at_two_square_of_augmentation():
    g = group([[1, 0]])
    a = al.group_algebra(g, 2)
    x = np.array([1, 1])
    assert not a.product(x, x).any()
    assert al.is_local(a).local


def test_c3_at_two_semisimple():
    a = al.group_algebra(group(C3), 2)
    assert a.dim == 3
    assert al.radical(a).space.dim == 0


def test_c3_at_three_radical_is_augmentation():
    a = al.group_algebra(group(C3), 3)
    jac = al.radical(a).space
    assert jac.dim == 2
    # every element of the radical has coefficient sum zero
    assert not (jac.basis.sum(axis=1) % 3).any()
    assert al.nilpotency_index(a, jac) == 3


def test_radical_of_field():
    assert al.radical(gf(7)).space.dim == 0


def test_blocks_of_gf2_c3():
    g = group(C3)
    a = al.group_algebra(g, 2)
    idem = sorted(tuple(int(v) for v in e) for e in al.central_primitive_idempotents(a))
    assert idem == [(0, 1, 1), (1, 1, 1)]


def test_p_group_algebra_single_block():
    a = al.group_algebra(group([[1, 2, 0]]), 3)
    idem = list(al.central_primitive_idempotents(a))
    assert len(idem) == 1 and np.array_equal(idem[0], a.unity)


def test_field_single_block():
    assert len(al.central_primitive_idempotents(gf(3))) == 1


def test_local_gf3_c3():
    loc = al.is_local(al.group_algebra(group(C3), 3))
    assert loc.local and loc.residue_dim == 1


def test_block_ideal_is_gf4():
    a = al.group_algebra(group(C3), 2)
    e = np.array([0, 1, 1])
    sub = al.subalgebra(a, gl.echelon_basis(a.products(e[None, :], np.eye(3, dtype=np.int64))[0], 2), unity=e)
    loc = al.is_local(sub)
    assert sub.dim == 2
    assert loc.local and loc.residue_dim == 2 and loc.residue_commutative


def test_gf2_c3_not_local():
    assert not al.is_local(al.group_algebra(group(C3), 2)).local


def test_quotient_by_zero_ideal():
    a = al.group_algebra(group(C3), 2)
    q = al.quotient_by_ideal(a, gl.zero_subspace(3, 2))
    assert q.algebra.dim == 3
    assert np.array_equal(q.projection, np.eye(3, dtype=np.int64))


def test_gf3_c3_mod_radical():
    a = al.group_algebra(group(C3), 3)
    q = al.quotient_by_ideal(a, al.radical(a).space)
    assert q.algebra.dim == 1


def test_gf2_c6_mod_radical():
    a = al.group_algebra(group(C6), 2)
    jac = al.radical(a).space
    assert jac.dim == 3
    q = al.quotient_by_ideal(a, jac)
    assert q.algebra.dim == 3
    assert len(al.central_primitive_idempotents(q.algebra)) == 2


def test_unit_search_trivial():
    a = al.group_algebra(group(C3), 2)
    one = gl.echelon_basis([a.unity], 2)
    x, y = al.find_unit_in_subspace(a, one, one)
    assert np.array_equal(x, a.unity) and np.array_equal(y, a.unity)


def test_unit_search_absent():
    g = group(C3)
    a = al.group_algebra(g, 2)
    c = gl.echelon_basis([elem(g, [1, 2, 0])], 2)
    assert al.find_unit_in_subspace(a, c, c) is None


def test_unit_search_order_two_element():
    g = group(C6)
    a = al.group_algebra(g, 3)
    t = elem(g, [3, 4, 5, 0, 1, 2])
    span = gl.echelon_basis([t], 3)
    x, y = al.find_unit_in_subspace(a, span, span)
    assert np.array_equal(a.product(x, y), a.unity)
    assert np.array_equal(x, t) or np.array_equal(x, 2 * t % 3)


def test_from_json_rejects_nonassociative():
    mul = np.zeros((2, 2, 2), dtype=np.int64)
    mul[0, 0, 0] = mul[0, 1, 1] = mul[1, 0, 1] = 1
    mul[1, 1, 0] = 1
    ok = al.from_json({"p": 2, "dim": 2, "unity": [1, 0], "mul": mul.tolist()})
    assert ok.dim == 2
    bad = mul.copy()
    bad[1, 1] = [1, 1]
    bad[0, 1] = [1, 0]
    with pytest.raises(ConstructionError):
        al.from_json({"p": 2, "dim": 2, "unity": [1, 0], "mul": bad.tolist()})


def test_from_json_missing_field():
    with pytest.raises(ConstructionError):
        al.from_json({"p": 2, "dim": 1})
