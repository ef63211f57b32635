from bct import algebras as al
from bct import oracle
from groups_fixtures import C3, S3, group


def test_radical_enumeration_gf3_c3():
    a = al.group_algebra(group(C3), 3)
    rad = oracle.radical_by_enumeration(a.mul, 3, 4096)
    assert len(rad) == 9
    assert all(sum(v) % 3 == 0 for v in rad)


def test_radical_enumeration_semisimple():
    a = al.group_algebra(group(C3), 2)
    assert oracle.radical_by_enumeration(a.mul, 2, 4096) == [(0, 0, 0)]


def test_radical_enumeration_respects_cap():
    a = al.group_algebra(group(S3), 3)
    assert oracle.radical_by_enumeration(a.mul, 3, 100) is None


def test_rank_mod_p():
    assert oracle._rank([[1, 2], [2, 4]], 5) == 1
    assert oracle._rank([[1, 2], [2, 4]], 2) == 1
    assert oracle._rank([[1, 0], [0, 1]], 3) == 2


def test_group_ring_conjugation_and_orbits():
    g = group(S3)
    ring = oracle.GroupRing(g.mul, g.inv, 3)
    c = g.perms.index((1, 2, 0))
    t = g.perms.index((1, 0, 2))
    assert ring.conj(t, {c: 1}) == {int(g.inv[c]): 1}
    sums = ring.orbit_sums(range(6), [0, c, int(g.mul[c, c])])
    assert sorted(len(o) for o in sums) == [1, 1, 1, 3]


def test_support_subgroup_s3_a3_p3():
    g = group(S3)
    ring = oracle.GroupRing(g.mul, g.inv, 3)
    k = {x for x in range(6) if g.element_orders[x] != 2}
    cosets = oracle._cosets(ring, k, range(6))
    assert oracle.support_subgroup(ring, {0: 1}, cosets, sorted(k), [0, 1]) == {0}
    # p = 2: (t1+t2+t3)^2 = 1+c+c^2, the principal block, which keeps the grading
    ring2 = oracle.GroupRing(g.mul, g.inv, 2)
    b = {x: 1 for x in k}
    assert oracle.support_subgroup(ring2, {0: 1}, cosets, sorted(k), [0, 1]) == {0}
    assert oracle.support_subgroup(ring2, b, cosets, sorted(k), [0, 1]) == {0, 1}
