"""K-interior H-algebras, their group-graded envelopes and Brauer quotients.

Conventions
-----------
Actions are left actions written as matrices on column vectors:
``act[h] @ a`` is ``h a h^-1``.  Hence ``act[h] @ act[g] == act[hg]`` and,
for ``k`` in ``K``, ``act[k]`` is conjugation by ``kappa[k]``.

A graded algebra keeps each homogeneous component on its own block of
standard coordinates (``degree[i]`` is the grading element of coordinate
``i``).  Subalgebras and quotients built from graded subspaces inherit that
layout, so every graded subspace has a homogeneous echelon basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Mapping

import numpy as np

from . import algebras as al
from . import gf_linalg as gl
from . import groups as gr
from .algebras import FiniteAlgebra
from .errors import ConstructionError, TheoremViolation
from .gf_linalg import Subspace
from .groups import GroupTable, QuotientMap, Subgroup


def _trivial_table() -> GroupTable:
    return GroupTable(np.zeros((1, 1), dtype=np.int64), np.zeros(1, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """An algebra graded by a finite group, with a group acting by automorphisms.

    ``acting`` is a subgroup of the top-level group ``H``; ``action[h]`` is the
    matrix of ``h`` and ``grading_action[h]`` the induced permutation of the
    grading group.  ``quotient`` and ``interior`` are only set for envelopes.
    """

    algebra: FiniteAlgebra
    grading: GroupTable
    degree: tuple[int, ...]
    acting: Subgroup
    action: Mapping[int, np.ndarray]
    grading_action: Mapping[int, tuple[int, ...]]
    quotient: QuotientMap | None = None
    interior: Mapping[int, np.ndarray] | None = None
    check_grading: bool = field(default=True, repr=False)

    def __post_init__(self):
        d = self.algebra.dim
        if len(self.degree) != d:
            raise ConstructionError("degree must assign a grading element to every coordinate")
        if self.check_grading:
            self.validate()

    def validate(self) -> None:
        deg = np.array(self.degree)
        c = self.algebra.mul
        target = self.grading.mul[deg[:, None], deg[None, :]]
        bad = (c != 0) & (deg[None, None, :] != target[:, :, None])
        if bad.any():
            i, j, _ = np.argwhere(bad)[0]
            raise ConstructionError(
                f"product of components {self.degree[i]} and {self.degree[j]} leaves component {target[i, j]}"
            )
        for h in self.acting.elements:
            m = self.action[h]
            perm = np.array(self.grading_action[h])
            bad = (m != 0) & (deg[:, None] != perm[deg][None, :])
            if bad.any():
                raise ConstructionError(f"action of {h} does not permute components as declared")

    def __repr__(self) -> str:
        return f"GradedAlgebra(dim={self.algebra.dim}, grading order={self.grading.order}, support={list(self.support)})"

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def _slots(self) -> dict[int, np.ndarray]:
        out: dict[int, list[int]] = {}
        for i, s in enumerate(self.degree):
            out.setdefault(s, []).append(i)
        return {s: np.array(v, dtype=np.int64) for s, v in out.items()}

    def slot(self, sigma: int) -> np.ndarray:
        return self._slots.get(sigma, np.zeros(0, dtype=np.int64))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._slots))

    def component(self, sigma: int) -> Subspace:
        idx = self.slot(sigma)
        basis = np.zeros((len(idx), self.dim), dtype=np.int64)
        basis[range(len(idx)), idx] = 1
        return Subspace(self.p, self.dim, basis, tuple(int(i) for i in idx))

    def act_on_grading(self, h: int, sigma: int) -> int:
        return self.grading_action[h][sigma]


@dataclass(frozen=True, eq=False)
class InteriorAlgebra:
    algebra: FiniteAlgebra
    group: GroupTable
    normal: Subgroup
    kappa: Mapping[int, np.ndarray]
    act: tuple[np.ndarray, ...]
    # GF(p)[K] with inclusion and conjugation; coordinate i is normal.elements[i]
    canonical: bool = False

    @property
    def p(self) -> int:
        return self.algebra.p

    @cached_property
    def as_graded(self) -> GradedAlgebra:
        """The algebra with trivial grading and the full action of the group."""
        g = self.group
        return GradedAlgebra(
            self.algebra,
            _trivial_table(),
            (0,) * self.algebra.dim,
            g.whole,
            {h: self.act[h] for h in range(g.order)},
            {h: (0,) for h in range(g.order)},
            check_grading=False,
        )


def _is_automorphism(alg: FiniteAlgebra, m: np.ndarray) -> bool:
    p, d = alg.p, alg.dim
    if not np.array_equal(gl.matmul(m, alg.unity, p), alg.unity):
        return False
    # m(e_i e_j) == m(e_i) m(e_j)
    lhs = gl.matmul(alg.mul.reshape(d * d, d), m.T, p)
    cols = m.T.copy()
    rhs = alg.products(cols, cols).reshape(d * d, d)
    return bool(np.array_equal(lhs, rhs)) and gl.inverse(m, p) is not None


def validate_interior(
    algebra: FiniteAlgebra,
    group: GroupTable,
    normal,
    kappa: Mapping[int, np.ndarray],
    act,
) -> InteriorAlgebra:
    """Check every axiom of a K-interior H-algebra, naming the first one that fails."""
    p = algebra.p
    k = gr.as_subgroup(group, normal)
    if not gr.is_normal(group, k):
        raise ConstructionError("interior axiom 'normal_subgroup' violated: K is not normal in H")
    act = tuple(gl.as_mod(m, p) for m in act)
    if len(act) != group.order or any(m.shape != (algebra.dim, algebra.dim) for m in act):
        raise ConstructionError("interior axiom 'action_shape' violated: one dim x dim matrix per element of H")
    kap = {int(x): gl.as_mod(v, p) for x, v in kappa.items()}
    if set(kap) != set(k.elements):
        raise ConstructionError("interior axiom 'kappa_domain' violated: kappa must be given on every element of K")
    inv = {}
    for x, v in kap.items():
        vi = algebra.inverse(v)
        if vi is None:
            raise ConstructionError(f"interior axiom 'kappa_units' violated: kappa({x}) is not invertible")
        inv[x] = vi
    for x in k.elements:
        for y in k.elements:
            if not np.array_equal(algebra.product(kap[x], kap[y]), kap[int(group.mul[x, y])]):
                raise ConstructionError(f"interior axiom 'kappa_homomorphism' violated at ({x}, {y})")
    for h in range(group.order):
        if not _is_automorphism(algebra, act[h]):
            raise ConstructionError(f"interior axiom 'action_automorphism' violated by element {h}")
    for h in range(group.order):
        for g in range(group.order):
            if not np.array_equal(gl.matmul(act[h], act[g], p), act[int(group.mul[h, g])]):
                raise ConstructionError(f"interior axiom 'action_homomorphism' violated at ({h}, {g})")
    for x in k.elements:
        conj = gl.matmul(algebra.left_matrix(kap[x]), algebra.right_matrix(inv[x]), p)
        if not np.array_equal(conj, act[x]):
            raise ConstructionError(
                f"interior axiom 'interior_compatibility' violated: action of {x} is not conjugation by kappa({x})"
            )
    for h in range(group.order):
        for x in k.elements:
            if not np.array_equal(gl.matmul(act[h], kap[x], p), kap[group.conj(h, x)]):
                raise ConstructionError(f"interior axiom 'kappa_equivariance' violated at h={h}, k={x}")
    return InteriorAlgebra(algebra, group, k, kap, act)


def canonical_interior(group: GroupTable, normal, p: int) -> InteriorAlgebra:
    """GF(p)[K] as a K-interior H-algebra: inclusion of K and conjugation by H."""
    k = gr.as_subgroup(group, normal)
    table = gr.induced_table(k)
    alg = al.group_algebra(table, p)
    pos = {e: i for i, e in enumerate(k.elements)}
    n = k.order
    kappa = {}
    for x in k.elements:
        v = np.zeros(n, dtype=np.int64)
        v[pos[x]] = 1
        kappa[x] = v
    act = []
    for h in range(group.order):
        m = np.zeros((n, n), dtype=np.int64)
        for x in k.elements:
            m[pos[group.conj(h, x)], pos[x]] = 1
        act.append(m)
    return replace(validate_interior(alg, group, k, kappa, act), canonical=True)


def graded_envelope(ia: InteriorAlgebra) -> GradedAlgebra:
    """The G-graded H-interior algebra with components ``A_1 (x) x_sigma``.

    Coordinates are ``sigma * dim(A_1) + i`` with ``x_sigma`` the least element
    of the coset.  The product of ``a (x) x_s`` and ``b (x) x_t`` is
    ``a . x_s(b) . kappa(x_s x_t x_st^-1) (x) x_st``.
    """
    h = ia.group
    q = gr.quotient_group(h, ia.normal)
    a1 = ia.algebra
    p, d1, ng = ia.p, a1.dim, q.quotient.order
    d = d1 * ng
    mul = np.zeros((d, d, d), dtype=np.int64)
    for s in range(ng):
        xs = q.section[s]
        # left[i, j, :] = e_i * act(x_s)(e_j)
        left = np.einsum("ilk,lj->ijk", a1.mul, ia.act[xs]) % p
        for t in range(ng):
            st = int(q.quotient.mul[s, t])
            defect = int(h.mul[h.mul[xs, q.section[t]], h.inv[q.section[st]]])
            block = gl.matmul(left.reshape(d1 * d1, d1), a1.right_matrix(ia.kappa[defect]).T, p)
            mul[s * d1 : (s + 1) * d1, t * d1 : (t + 1) * d1, st * d1 : (st + 1) * d1] = block.reshape(d1, d1, d1)
    unity = np.zeros(d, dtype=np.int64)
    unity[:d1] = a1.unity
    try:
        alg = FiniteAlgebra(p, mul, unity)
    except ConstructionError as exc:
        raise ConstructionError(f"graded envelope is inconsistent: {exc}") from None
    degree = tuple(s for s in range(ng) for _ in range(d1))
    iota = {}
    for x in range(h.order):
        s = q.projection[x]
        v = np.zeros(d, dtype=np.int64)
        v[s * d1 : (s + 1) * d1] = ia.kappa[int(h.mul[x, h.inv[q.section[s]]])]
        iota[x] = v
    for x in range(h.order):
        for y in range(h.order):
            if not np.array_equal(alg.product(iota[x], iota[y]), iota[int(h.mul[x, y])]):
                raise TheoremViolation("envelope_interior_map", "structural map H -> A is not multiplicative", {"pair": [x, y]})
    action = {x: gl.matmul(alg.left_matrix(iota[x]), alg.right_matrix(iota[int(h.inv[x])]), p) for x in range(h.order)}
    for x in range(h.order):
        if not np.array_equal(action[x][:d1, :d1], ia.act[x]):
            raise TheoremViolation("envelope_action", "conjugation in A does not restrict to the action on A_1", {"element": x})
    gact = {
        x: tuple(int(q.quotient.mul[q.quotient.mul[q.projection[x], s], q.quotient.inv[q.projection[x]]]) for s in range(ng))
        for x in range(h.order)
    }
    return GradedAlgebra(alg, q.quotient, degree, h.whole, action, gact, quotient=q, interior=iota)


def envelope_to_group_algebra(ia: InteriorAlgebra, env: GradedAlgebra) -> tuple[np.ndarray, FiniteAlgebra]:
    """For the canonical instance, the basis bijection ``a_k (x) x_s -> k x_s`` onto GF(p)[H].

    Returns the permutation (envelope coordinate -> element of H) after
    checking it carries structure constants onto those of GF(p)[H].
    """
    h, k = ia.group, ia.normal
    q = env.quotient
    d1 = k.order
    if ia.algebra.dim != d1:
        raise ConstructionError("not a canonical group-algebra instance")
    perm = np.array(
        [int(h.mul[k.elements[i], q.section[s]]) for s in range(q.quotient.order) for i in range(d1)], dtype=np.int64
    )
    if sorted(perm.tolist()) != list(range(h.order)):
        raise TheoremViolation("canonical_isomorphism", "basis map is not a bijection onto H")
    kh = al.group_algebra(h, ia.p)
    permuted = kh.mul[np.ix_(perm, perm, perm)]
    if not np.array_equal(permuted, env.algebra.mul):
        i, j, _ = np.argwhere(permuted != env.algebra.mul)[0]
        raise TheoremViolation("canonical_isomorphism", "envelope is not isomorphic to GF(p)[H] via a(x)x -> a.x", {"pair": [int(i), int(j)]})
    return perm, kh


def fixed_points(x: GradedAlgebra, v: Subspace, s: Subgroup) -> Subspace:
    """Elements of ``v`` fixed by every element of ``s``.

    Solved on the generators of ``s``; ``v`` must be ``s``-invariant.
    """
    p = x.p
    if not v.dim:
        return v
    blocks = []
    for g in s.generators:
        if g not in x.action:
            raise ConstructionError(f"no action recorded for element {g}")
        moved = gl.matmul(v.basis, x.action[g].T, p)
        if not v.contains(moved):
            raise ConstructionError(f"subspace is not invariant under element {g}")
        blocks.append(((moved - v.basis) % p).T)
    if not blocks:
        return v
    ker = gl.nullspace(np.concatenate(blocks), p, v.dim)
    if not ker.dim:
        return gl.zero_subspace(v.ambient_dim, p)
    return gl.echelon_basis(gl.matmul(ker.basis, v.basis, p), p, v.ambient_dim)


def graded_fixed_points(x: GradedAlgebra, s: Subgroup, grades=None) -> dict[int, Subspace]:
    return {sg: fixed_points(x, x.component(sg), s) for sg in (x.support if grades is None else grades)}


def relative_trace(x: GradedAlgebra, a, small: Subgroup, big: Subgroup) -> np.ndarray:
    """``Tr_small^big(a)``: the sum of ``r a r^-1`` over left coset representatives ``r``."""
    if not small.issubset(big):
        raise ConstructionError("relative trace needs small <= big")
    p = x.p
    a = gl.as_mod(a, p)
    for g in small.generators:
        if not np.array_equal(gl.matmul(x.action[g], a, p), a):
            raise ConstructionError("element is not fixed by the smaller subgroup")
    g = big.parent
    totals = []
    for pick in ("min", "max"):
        t = np.zeros_like(a)
        for r in gr.left_transversal(g, big, small, pick):
            t = (t + gl.matmul(x.action[r], a, p)) % p
        totals.append(t)
    if not np.array_equal(*totals):
        raise TheoremViolation("relative_trace", "trace depends on the choice of coset representatives")
    return totals[0]


def trace_image(x: GradedAlgebra, v: Subspace, small: Subgroup, big: Subgroup) -> Subspace:
    """``Tr_small^big`` applied to the ``small``-fixed points of ``v``."""
    fixed = fixed_points(x, v, small)
    if not fixed.dim:
        return gl.zero_subspace(x.dim, x.p)
    return gl.echelon_basis(np.stack([relative_trace(x, a, small, big) for a in fixed.basis]), x.p, x.dim)


@dataclass(frozen=True, eq=False)
class BrauerData:
    """``Br_P : X^P -> X(P)``.

    ``projection`` is a (dim X(P), dim X) matrix valid on ``fixed``; ``lift``
    maps target coordinates back to chosen preimages in ``X^P``.
    """

    source: GradedAlgebra
    subgroup: Subgroup
    fixed: Subspace
    kernel: Subspace
    target: GradedAlgebra
    projection: np.ndarray
    lift: np.ndarray

    def __call__(self, a) -> np.ndarray:
        a = gl.as_mod(a, self.source.p)
        if not self.fixed.contains(a):
            raise ConstructionError("Brauer map applied to an element that is not P-fixed")
        return gl.matmul(self.projection, a, self.source.p)

    def apply_many(self, rows: np.ndarray) -> np.ndarray:
        return gl.matmul(np.asarray(rows), self.projection.T, self.source.p)


def brauer_kernel(x: GradedAlgebra, subgroup: Subgroup, check_splitting: bool = True) -> tuple[Subspace, Subspace]:
    """``(X^P, sum over Q < P of Tr_Q^P(X^Q))``, both assembled component by component.

    With ``check_splitting`` the traces of the whole algebra are also computed
    and compared with the component-wise ones.
    """
    p, P = x.p, subgroup
    grades = x.support
    comp_fixed = {s: fixed_points(x, x.component(s), P) for s in grades}
    fixed = gl.echelon_basis(np.concatenate([comp_fixed[s].basis for s in grades]), p, x.dim)
    maxes = gr.maximal_subgroups(P.parent, P)
    kernel = gl.zero_subspace(x.dim, p)
    for q in maxes:
        per_comp = {s: trace_image(x, x.component(s), q, P) for s in grades}
        for s in grades:
            kernel = gl.span_sum(kernel, per_comp[s])
        if check_splitting:
            whole = trace_image(x, x.algebra.whole, q, P)
            for s in grades:
                if gl.span_intersection(whole, comp_fixed[s]) != per_comp[s]:
                    raise TheoremViolation(
                        "graded_trace_splitting",
                        "traces of the whole algebra do not split along the grading",
                        {"component": int(s), "subgroup": list(q.elements)},
                    )
    return fixed, kernel


def brauer_quotient_graded(x, subgroup: Subgroup, normal: Subgroup | None = None, p: int | None = None) -> BrauerData:
    """Graded Brauer quotient ``X(P)`` of an algebra with respect to a p-subgroup ``P`` of ``K``.

    ``x`` is a GradedAlgebra (or an InteriorAlgebra, treated as trivially
    graded).  The kernel in each component is the sum of traces from the
    maximal subgroups of ``P``.
    """
    if isinstance(x, InteriorAlgebra):
        normal = x.normal if normal is None else normal
        x = x.as_graded
    p = x.p if p is None else p
    P = subgroup
    h = P.parent
    if normal is not None and not P.issubset(normal):
        raise ConstructionError("P is not contained in K")
    if not gr.is_p_group(P, p):
        raise ConstructionError("P is not a p-group")
    if not P.issubset(x.acting):
        raise ConstructionError("P does not act on the algebra")
    alg = x.algebra
    fixed, kernel = brauer_kernel(x, P)
    sub = al.subalgebra(alg, fixed)
    sub_degree = tuple(x.degree[c] for c in fixed.pivots)
    ker_local = gl.echelon_basis(fixed.coords(kernel.basis), p, fixed.dim) if kernel.dim else gl.zero_subspace(fixed.dim, p)
    if not al.is_two_sided_ideal(sub, ker_local):
        raise TheoremViolation("brauer_kernel_ideal", "sum of relative traces is not an ideal of the fixed points")
    if ker_local.dim == fixed.dim:
        raise ConstructionError("Brauer quotient is zero")
    quo = al.quotient_by_ideal(sub, ker_local)
    comp = ker_local.complement_indices()
    degree = tuple(sub_degree[c] for c in comp)
    projection = np.zeros((quo.algebra.dim, x.dim), dtype=np.int64)
    projection[:, list(fixed.pivots)] = quo.projection
    lift = fixed.basis[list(comp)].T.copy()
    acting = gr.normalizer(h, P, within=x.acting)
    action = {}
    for n in acting.elements:
        m = gl.matmul(gl.matmul(projection, x.action[n], p), lift, p)
        moved = gl.matmul(x.action[n], kernel.basis.T, p).T if kernel.dim else kernel.basis
        if kernel.dim and not kernel.contains(moved):
            raise TheoremViolation("brauer_equivariance", "normalizer does not preserve the Brauer kernel", {"element": n})
        action[n] = m
    gact = {n: x.grading_action[n] for n in acting.elements}
    target = GradedAlgebra(quo.algebra, x.grading, degree, acting, action, gact)
    return BrauerData(x, P, fixed, kernel, target, projection, lift)


@dataclass(frozen=True, eq=False)
class PsiCertificate:
    """The algebra ``R`` built from ``A_1(P)`` and the graded isomorphism onto ``A'(P)``.

    ``matrix`` maps R-coordinates to A(P)-coordinates.  ``tau_to_sigma`` sends a
    grading element of R (a coset of C_K(P) in C_H(P), local numbering) to the
    corresponding element of G = H/K.
    """

    R: GradedAlgebra
    r_table: GroupTable
    r_quotient: QuotientMap
    a1_brauer: BrauerData
    matrix: np.ndarray
    tau_to_sigma: dict[int, int]
    checks: dict[str, bool]


def _n_action_on_r(
    n: int,
    h: GroupTable,
    table: GroupTable,
    rq: QuotientMap,
    a1p: BrauerData,
    kappa_r: dict[int, np.ndarray],
    d1: int,
) -> tuple[np.ndarray, tuple[int, ...]]:
    # n (a (x) x_t) n^-1 = n(a) kappa(c) (x) x_t'  where n x_t n^-1 = c x_t'
    local = {e: i for i, e in enumerate(table.embedding)}
    alg = a1p.target.algebra
    ng = rq.quotient.order
    m = np.zeros((d1 * ng, d1 * ng), dtype=np.int64)
    perm = []
    act_n = a1p.target.action[n]
    for t in range(ng):
        x = table.embedding[rq.section[t]]
        y = h.conj(n, x)
        ly = local[y]
        t2 = rq.projection[ly]
        c = int(table.mul[ly, table.inv[rq.section[t2]]])
        block = gl.matmul(alg.right_matrix(kappa_r[c]), act_n, alg.p)
        m[t2 * d1 : (t2 + 1) * d1, t * d1 : (t + 1) * d1] = block
        perm.append(t2)
    return m, tuple(perm)


def psi_iso(ia: InteriorAlgebra, subgroup: Subgroup, env: GradedAlgebra, env_brauer: BrauerData) -> PsiCertificate:
    """Build ``R`` and verify ``psi : R -> A'(P)`` is a graded N_H(P)-equivariant isomorphism."""
    h, k, p = ia.group, ia.normal, ia.p
    P = subgroup
    ch = gr.centralizer(h, P)
    ck = Subgroup(h, tuple(x for x in ch.elements if x in k), _check=False)
    nh = gr.normalizer(h, P)
    a1p = brauer_quotient_graded(ia, P)
    alg1p = a1p.target.algebra
    d1 = alg1p.dim
    table = gr.induced_table(ch)
    ck_local = gr.restrict_to(table, ck)
    kappa_r = {}
    for li, x in enumerate(table.embedding):
        if x in ck:
            kappa_r[li] = a1p(ia.kappa[x])
    act_r = tuple(a1p.target.action[x] for x in table.embedding)
    ia_r = validate_interior(alg1p, table, ck_local, kappa_r, act_r)
    env_r = graded_envelope(ia_r)
    rq = env_r.quotient
    action, gact = {}, {}
    for n in nh.elements:
        m, perm = _n_action_on_r(n, h, table, rq, a1p, kappa_r, d1)
        action[n], gact[n] = m, perm
    for li, x in enumerate(table.embedding):
        if not np.array_equal(action[x], env_r.action[li]):
            raise TheoremViolation("r_action", "normalizer action on R disagrees with inner conjugation", {"element": x})
    for n in nh.generators:
        if not _is_automorphism(env_r.algebra, action[n]):
            raise TheoremViolation("r_action", "normalizer does not act on R by automorphisms", {"element": n})
    R = GradedAlgebra(env_r.algebra, env_r.grading, env_r.degree, nh, action, gact, quotient=rq)

    q = env.quotient
    target = env_brauer.target
    cols = []
    tau_to_sigma = {}
    for t in range(rq.quotient.order):
        x = table.embedding[rq.section[t]]
        tau_to_sigma[t] = q.projection[x]
        for i in range(d1):
            a = np.zeros(env.dim, dtype=np.int64)
            a[: ia.algebra.dim] = a1p.lift[:, i]
            cols.append(env_brauer(env.algebra.product(a, env.interior[x])))
    matrix = np.stack(cols, axis=1) if cols else np.zeros((target.dim, 0), dtype=np.int64)

    checks = {}
    sigmas = sorted(tau_to_sigma.values())
    expected = sorted({q.projection[x] for x in ch.elements})
    checks["grading_bijection"] = sigmas == expected and len(set(sigmas)) == len(sigmas)
    ok = True
    for t, s in tau_to_sigma.items():
        rs, cs = target.slot(s), R.slot(t)
        block = matrix[np.ix_(rs, cs)]
        outside = np.delete(matrix[:, cs], rs, axis=0)
        if block.shape[0] != block.shape[1] or gl.inverse(block, p) is None or outside.any():
            ok = False
            witness = {"component": int(s)}
            break
    checks["componentwise_bijective"] = ok
    ident = tau_to_sigma[0] == 0 and ok
    checks["identity_component_bijective"] = ident
    d = R.dim
    basis = np.eye(d, dtype=np.int64)
    prod_r = R.algebra.products(basis, basis).reshape(d * d, d)
    lhs = gl.matmul(prod_r, matrix.T, p)
    img = matrix.T
    rhs = target.algebra.products(img, img).reshape(d * d, -1)
    checks["multiplicative"] = bool(np.array_equal(lhs, rhs))
    equiv = True
    for n in nh.generators:
        if not np.array_equal(gl.matmul(matrix, R.action[n], p), gl.matmul(target.action[n], matrix, p)):
            equiv = False
            witness = {"generator": int(n)}
            break
    checks["equivariant"] = equiv
    strong = True
    one = target.component(0)
    for s in expected:
        if target.algebra.span_product(target.component(s), target.component(int(target.grading.inv[s]))) != one:
            strong = False
            witness = {"component": int(s)}
    checks["strongly_graded_restriction"] = strong
    failed = [name for name, good in checks.items() if not good]
    if failed:
        raise TheoremViolation("psi_isomorphism", f"failed: {', '.join(failed)}", locals().get("witness", {}))
    return PsiCertificate(R, table, rq, a1p, matrix, tau_to_sigma, checks)


def truncation_certificate(brauer: BrauerData, coord_elements, centralizer: Subgroup) -> np.ndarray:
    """For a group-algebra source, the matrix ``T`` with ``T . Br(x) = x restricted to C``.

    ``coord_elements[i]`` is the group element carried by source coordinate
    ``i``; columns of the result follow ``centralizer.elements``.  Checked on
    every basis vector of the fixed points, and ``T`` must be invertible.
    """
    p = brauer.source.p
    pos = {int(g): i for i, g in enumerate(coord_elements)}
    cols = [pos[c] for c in centralizer.elements]
    lift = brauer.lift
    t = lift[cols, :] % p
    fixed = brauer.fixed.basis
    if not np.array_equal(gl.matmul(t, brauer.apply_many(fixed).T, p), fixed[:, cols].T % p):
        raise TheoremViolation("brauer_truncation", "Brauer map is not truncation to the centralizer")
    if t.shape[0] != t.shape[1] or gl.inverse(t, p) is None:
        raise TheoremViolation(
            "brauer_truncation", f"quotient has dimension {t.shape[1]}, centralizer has order {centralizer.order}"
        )
    return t
