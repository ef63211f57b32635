import numpy as np
import pytest

from bct import clifford as cl
from bct import groups as gr
from bct import interior as it
from bct.errors import UnsupportedError
from groups_fixtures import A4, C3, C6, S3, S4, group, sub

R2 = [[2, 3, 4, 5, 0, 1]]


def setup(gens, kgens, p):
    g = group(gens)
    k = sub(g, kgens) if kgens else g.whole
    ia = it.canonical_interior(g, k, p)
    return g, ia, it.graded_envelope(ia)


def embed(env, v):
    out = np.zeros(env.dim, dtype=np.int64)
    out[: len(v)] = v
    return out


def test_stabilizer_of_one_is_everything():
    g, ia, env = setup(S3, [[1, 2, 0]], 2)
    assert cl.stabilizer_of_idempotent(ia.as_graded, ia.algebra.unity, g.whole) == g.whole


def test_stabilizer_of_gf2_c3_block_in_s3():
    g, ia, env = setup(S3, [[1, 2, 0]], 2)
    e = np.array([0, 1, 1])
    assert cl.stabilizer_of_idempotent(ia.as_graded, e, g.whole) == g.whole


def test_stabilizer_of_non_stable_idempotent():
    # GF(2)[C_3 x C_3] has blocks swapped by the automorphism exchanging the factors
    g = group([[1, 2, 0, 3, 4, 5], [0, 1, 2, 4, 5, 3], [3, 4, 5, 0, 1, 2]])
    k = sub(g, [[1, 2, 0, 3, 4, 5], [0, 1, 2, 4, 5, 3]])
    ia = it.canonical_interior(g, k, 2)
    sizes = sorted(cl.stabilizer_of_idempotent(ia.as_graded, b.idempotent, g.whole).order for b in cl.find_blocks(ia))
    assert sizes[0] < g.order and sizes[-1] == g.order


def test_defect_of_p_group_is_itself():
    g, ia, env = setup(C3, None, 3)
    assert cl.defect_groups(ia, ia.algebra.unity).representative == g.whole


def test_defect_zero_block():
    g, ia, env = setup(C3, None, 2)
    assert cl.defect_groups(ia, np.array([0, 1, 1])).representative.order == 1


def test_coprime_defect_is_trivial():
    g, ia, env = setup(S3, [[1, 2, 0]], 2)
    for b in cl.find_blocks(ia):
        assert cl.defect_groups(ia, b.idempotent).representative.order == 1


def test_principal_block_s4_a4_defect_v4():
    g, ia, env = setup(S4, A4, 2)
    blocks = cl.find_blocks(ia)
    assert len(blocks) == 1
    P = cl.defect_groups(ia, blocks[0].idempotent).representative
    assert P.order == 4 and gr.is_normal(g, P)


def test_support_with_trivial_grading_group():
    g, ia, env = setup(C3, None, 3)
    s = cl.graded_support_subgroup(env, embed(env, ia.algebra.unity), ia.normal, [0])
    assert s.elements == (0,)


def test_support_c6_c3_is_everything():
    g, ia, env = setup(C6, R2, 3)
    s = cl.graded_support_subgroup(env, embed(env, ia.algebra.unity), ia.normal, [0, 1])
    assert s.elements == (0, 1)


def test_support_s3_a3_p3_is_trivial():
    g, ia, env = setup(S3, [[1, 2, 0]], 3)
    s = cl.graded_support_subgroup(env, embed(env, ia.algebra.unity), ia.normal, [0, 1])
    assert s.elements == (0,)
    assert s.spaces[1].dim == 1


def test_crossed_product_trivial_support():
    g, ia, env = setup(S3, [[1, 2, 0]], 3)
    ext = cl.crossed_product_quotient(env, embed(env, ia.algebra.unity), ia.normal, [0], g.whole)
    assert ext.support == (0,) and ext.residue_dim == 1


def test_crossed_product_c6_c3():
    g, ia, env = setup(C6, R2, 3)
    ext = cl.crossed_product_quotient(env, embed(env, ia.algebra.unity), ia.normal, [0, 1], g.whole)
    assert ext.support == (0, 1)
    assert ext.residue_dim == 1
    assert [len(ext.quotient.slot(s)) for s in (0, 1)] == [1, 1]
    assert set(ext.frame) == {0, 1}
    assert ext.hu_order == 4
    prof = cl.unit_group_profile(ext)
    assert prof["order"] == 4 and prof["element_orders"] == {"1": 1, "2": 3}


def test_crossed_product_gf4_block():
    g, ia, env = setup(S3, [[1, 2, 0]], 2)
    ext = cl.crossed_product_quotient(env, embed(env, np.array([0, 1, 1])), ia.normal, [0], g.whole)
    assert ext.residue_dim == 2
    assert cl.unit_group_profile(ext)["order"] == 3


def test_compare_extensions_c6_c3():
    g, ia, env = setup(C6, R2, 3)
    P = ia.normal
    b = embed(env, ia.algebra.unity)
    bd = it.brauer_quotient_graded(env, P, ia.normal)
    ext_c = cl.crossed_product_quotient(env, b, ia.normal, [0, 1], g.whole)
    ext_e = cl.crossed_product_quotient(bd.target, bd(b), P, [0, 1], bd.target.acting, label="E")
    comp = cl.compare_extensions(ext_c, ext_e, bd, g.whole.generators)
    assert all(c.passed for c in comp.checks.values()), {k: v.witness for k, v in comp.checks.items()}
    assert comp.matrix.shape == (2, 2)


def test_correspondent_p_equals_k():
    g, ia, env = setup(C3, None, 3)
    c = cl.brauer_correspondent(ia, ia.algebra.unity, g.whole)
    assert np.array_equal(c.idempotent, ia.algebra.unity)


def test_correspondent_defect_zero():
    g, ia, env = setup(S3, [[1, 2, 0]], 2)
    b = np.array([0, 1, 1])
    c = cl.brauer_correspondent(ia, b, g.trivial)
    assert c.interior.group.order == 6
    assert np.array_equal(c.idempotent, b)


def test_correspondent_s4_a4():
    g, ia, env = setup(S4, A4, 2)
    P = cl.defect_groups(ia, ia.algebra.unity).representative
    c = cl.brauer_correspondent(ia, ia.algebra.unity, P)
    assert c.interior.normal.order == 12
    assert np.array_equal(c.idempotent, c.interior.algebra.unity)


def test_correspondent_needs_group_algebra():
    from dataclasses import replace

    g, ia, env = setup(C3, None, 3)
    with pytest.raises(UnsupportedError):
        cl.brauer_correspondent(replace(ia, canonical=False), ia.algebra.unity, g.whole)


def test_subgroup_predicates():
    g = group(S3)
    a3 = sub(g, [[1, 2, 0]])
    t = sub(g, [[1, 0, 2]])
    assert cl.is_subgroup(g, a3.elements) and not cl.is_subgroup(g, [0, 1, 2])
    assert cl.is_normal_in(g, a3.elements, g.whole.elements)
    assert not cl.is_normal_in(g, t.elements, g.whole.elements)
