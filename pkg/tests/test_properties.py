"""Property tests over random matrices, permutation groups and suite instances."""

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from bct import algebras as al
from bct import clifford as cl
from bct import gf_linalg as gl
from bct import groups as gr
from bct import interior as it
from groups_fixtures import A4, C6, D12, S3, S4, V4_IN_S4, group, sub

PRIMES = st.sampled_from([2, 3, 5, 7])
SLOW = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def matrices(draw, p=None, max_rows=5, max_cols=5):
    p = draw(PRIMES) if p is None else p
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(vals, dtype=np.int64).reshape(r, c)


@given(matrices())
def test_echelon_is_canonical(pm):
    p, m = pm
    s = gl.echelon_basis(m, p, m.shape[1])
    assert gl.echelon_basis(s.basis, p, m.shape[1]) == s
    assert s.contains(m) if len(m) else True
    assert s.dim == gl.rank(m, p) if len(m) else s.dim == 0
    # shuffling and scaling rows does not change the span
    if len(m):
        shuffled = (m[::-1] * np.arange(1, len(m) + 1)[:, None] % p) if p > len(m) else m[::-1]
        assert gl.echelon_basis(shuffled, p, m.shape[1]) == s


@given(st.data())
def test_dimension_formula(data):
    p = data.draw(PRIMES)
    _, a = data.draw(matrices(p=p, max_cols=4).filter(lambda x: x[1].shape[1] == 4))
    _, b = data.draw(matrices(p=p, max_cols=4).filter(lambda x: x[1].shape[1] == 4))
    u, v = gl.echelon_basis(a, p, 4), gl.echelon_basis(b, p, 4)
    assert gl.span_sum(u, v).dim + gl.span_intersection(u, v).dim == u.dim + v.dim
    i = gl.span_intersection(u, v)
    assert gl.span_contains(u, i) and gl.span_contains(v, i)


@given(matrices(max_rows=4, max_cols=4), st.data())
def test_solve_consistent_systems(pm, data):
    p, a = pm
    if not len(a):
        return
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = gl.matmul(a, x, p)
    sol = gl.solve(a, b, p)
    assert sol is not None
    assert np.array_equal(gl.matmul(a, sol, p), b)


@given(matrices(max_rows=4, max_cols=4))
def test_nullspace_is_annihilated(pm):
    p, a = pm
    if not len(a):
        return
    ns = gl.nullspace(a, p, a.shape[1])
    assert ns.dim + gl.rank(a, p) == a.shape[1]
    if ns.dim:
        assert not gl.matmul(a, ns.basis.T, p).any()


@given(st.lists(st.permutations(range(5)), min_size=0, max_size=3))
def test_closure_is_a_subgroup(gens):
    g = gr.build_group(generators=[list(x) for x in gens] or [], degree=5, max_order=120)
    assert 120 % g.order == 0
    assert cl.is_subgroup(g, range(g.order))
    for x in range(g.order):
        assert g.mul[0, x] == x == g.mul[x, 0]
    # associativity on a sample
    for a, b, c in [(x, (x + 1) % g.order, (x + 2) % g.order) for x in range(g.order)]:
        assert g.mul[g.mul[a, b], c] == g.mul[a, g.mul[b, c]]


@given(st.sampled_from([(S4, V4_IN_S4), (S4, A4), (D12, C6), (S3, [[1, 2, 0]])]))
def test_quotient_projection_is_homomorphism(case):
    g = group(case[0])
    q = gr.quotient_group(g, sub(g, case[1]))
    for x in range(g.order):
        for y in range(g.order):
            assert q.projection[g.mul[x, y]] == q.quotient.mul[q.projection[x], q.projection[y]]


INSTANCES = [
    (C6, [[2, 3, 4, 5, 0, 1]], 3),
    (S3, [[1, 2, 0]], 3),
    (S3, [[1, 2, 0]], 2),
    (S4, V4_IN_S4, 2),
    (A4, V4_IN_S4, 2),
]
_cache = {}


def instance(i):
    if i not in _cache:
        gens, kgens, p = INSTANCES[i]
        g = group(gens)
        ia = it.canonical_interior(g, sub(g, kgens), p)
        _cache[i] = (g, ia, it.graded_envelope(ia))
    return _cache[i]


def random_vec(data, p, n):
    return np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)), dtype=np.int64)


@SLOW
@given(st.integers(0, len(INSTANCES) - 1), st.data())
def test_envelope_grading_and_action(i, data):
    g, ia, env = instance(i)
    p = ia.p
    a, b = random_vec(data, p, env.dim), random_vec(data, p, env.dim)
    h = data.draw(st.integers(0, g.order - 1))
    act = env.action[h]
    # action is an algebra automorphism
    assert np.array_equal(gl.matmul(act, env.algebra.product(a, b), p), env.algebra.product(gl.matmul(act, a, p), gl.matmul(act, b, p)))
    # homogeneous products land in the product component
    s, t = data.draw(st.sampled_from(env.support)), data.draw(st.sampled_from(env.support))
    x = np.zeros(env.dim, dtype=np.int64)
    y = np.zeros(env.dim, dtype=np.int64)
    x[env.slot(s)] = a[env.slot(s)]
    y[env.slot(t)] = b[env.slot(t)]
    st_ = int(env.grading.mul[s, t])
    assert env.component(st_).contains(env.algebra.product(x, y))


def _p_subgroups(g, ia):
    return [P for P in gr.p_subgroup_reps(g, ia.p, within=ia.normal)]


@SLOW
@given(st.integers(0, len(INSTANCES) - 1), st.data())
def test_brauer_map_is_multiplicative_and_equivariant(i, data):
    g, ia, env = instance(i)
    p = ia.p
    P = data.draw(st.sampled_from(_p_subgroups(g, ia)))
    key = ("br", i, P.elements)
    if key not in _cache:
        _cache[key] = it.brauer_quotient_graded(env, P, ia.normal)
    bd = _cache[key]
    fx = bd.fixed
    a = gl.matmul(random_vec(data, p, fx.dim), fx.basis, p)
    b = gl.matmul(random_vec(data, p, fx.dim), fx.basis, p)
    prod = env.algebra.product(a, b)
    assert np.array_equal(bd(prod), bd.target.algebra.product(bd(a), bd(b)))
    n = data.draw(st.sampled_from(bd.target.acting.elements))
    assert np.array_equal(bd(gl.matmul(env.action[n], a, p)), gl.matmul(bd.target.action[n], bd(a), p))
    # traces from proper subgroups vanish
    for q in gr.maximal_subgroups(g, P):
        fq = it.fixed_points(env, env.algebra.whole, q)
        c = gl.matmul(random_vec(data, p, fq.dim), fq.basis, p)
        assert not bd(it.relative_trace(env, c, q, P)).any()


@SLOW
@given(st.integers(0, len(INSTANCES) - 1), st.data())
def test_trace_transitivity(i, data):
    g, ia, env = instance(i)
    p = ia.p
    chain = [s for s in gr.all_subgroups(g, ia.normal)]
    small = data.draw(st.sampled_from(chain))
    mid = data.draw(st.sampled_from([s for s in chain if small.issubset(s)]))
    big = data.draw(st.sampled_from([s for s in chain if mid.issubset(s)]))
    fx = it.fixed_points(env, env.algebra.whole, small)
    a = gl.matmul(random_vec(data, p, fx.dim), fx.basis, p)
    direct = it.relative_trace(env, a, small, big)
    stepped = it.relative_trace(env, it.relative_trace(env, a, small, mid), mid, big)
    assert np.array_equal(direct, stepped)
    assert it.fixed_points(env, env.algebra.whole, big).contains(direct)


@SLOW
@given(st.integers(0, len(INSTANCES) - 1))
def test_blocks_are_central_primitive(i):
    g, ia, env = instance(i)
    alg = ia.algebra
    blocks = cl.find_blocks(ia)
    total = np.zeros(alg.dim, dtype=np.int64)
    for b in blocks:
        e = b.idempotent
        assert np.array_equal(alg.product(e, e), e)
        assert np.array_equal(alg.left_matrix(e), alg.right_matrix(e))
        total = (total + e) % ia.p
    assert np.array_equal(total, alg.unity)


@SLOW
@given(st.integers(0, len(INSTANCES) - 1), st.data())
def test_radical_is_nilpotent_ideal(i, data):
    g, ia, env = instance(i)
    jac = al.radical(env.algebra).space
    assert al.is_two_sided_ideal(env.algebra, jac)
    if jac.dim:
        assert al.nilpotency_index(env.algebra, jac) is not None
    q = al.quotient_by_ideal(env.algebra, jac)
    assert al.radical(q.algebra).space.dim == 0
