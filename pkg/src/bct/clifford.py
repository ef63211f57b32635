"""Blocks, defect groups, graded support subgroups and Clifford extensions.

Subgroups of a grading group are plain sorted tuples of its element indices.
Subgroups of the top-level group are ``Subgroup`` objects.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import algebras as al
from . import gf_linalg as gl
from . import groups as gr
from . import interior as it
from .algebras import FiniteAlgebra, Locality
from .errors import ConstructionError, TheoremViolation, UnsupportedError
from .gf_linalg import Subspace
from .groups import GroupTable, QuotientMap, Subgroup
from .interior import BrauerData, GradedAlgebra, InteriorAlgebra

log = logging.getLogger(__name__)

HU_CAP = 4096
HU_PAIR_CAP = 64


@dataclass(frozen=True, eq=False)
class DefectClass:
    representative: Subgroup
    conjugates: tuple[Subgroup, ...]
    # orders of the p-subgroup class representatives with Br_P(b) != 0 / b in Tr_P^K
    nonvanishing: tuple[tuple[int, ...], ...]
    trace_members: tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class Block:
    parent: InteriorAlgebra
    index: int
    idempotent: np.ndarray
    locality: Locality | None
    skip_reason: str | None = None

    @property
    def usable(self) -> bool:
        return self.skip_reason is None


def _span_mul(alg: FiniteAlgebra, e: np.ndarray, v: Subspace, side: str = "left") -> Subspace:
    if not v.dim:
        return v
    prods = alg.products(e[None, :], v.basis)[0] if side == "left" else alg.products(v.basis, e[None, :])[:, 0]
    return gl.echelon_basis(prods, alg.p, alg.dim)


def fixed_subalgebra(ia: InteriorAlgebra, s: Subgroup | None = None) -> Subspace:
    return it.fixed_points(ia.as_graded, ia.algebra.whole, ia.normal if s is None else s)


def find_blocks(ia: InteriorAlgebra) -> list[Block]:
    """Central primitive idempotents of ``A_1``; those not primitive in ``A_1^K`` are kept but flagged."""
    alg = ia.algebra
    fixed = fixed_subalgebra(ia)
    out = []
    for i, e in enumerate(al.central_primitive_idempotents(alg)):
        corner = _span_mul(alg, e, fixed)
        loc = al.is_local(al.subalgebra(alg, corner, unity=e))
        reason = None if loc.local else "idempotent is not primitive in the K-fixed subalgebra"
        out.append(Block(ia, i, e, loc, reason))
    return out


def stabilizer_of_idempotent(x: GradedAlgebra, e, s: Subgroup) -> Subgroup:
    e = gl.as_mod(e, x.p)
    keep = tuple(h for h in s.elements if np.array_equal(gl.matmul(x.action[h], e, x.p), e))
    return Subgroup(s.parent, keep)


def image_in_quotient(q: QuotientMap, s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted({q.projection[h] for h in s}))


def defect_groups(ia: InteriorAlgebra, b, p: int | None = None) -> DefectClass:
    """Defect class of the block ``b`` computed two ways that must agree.

    Maximal ``P`` (up to K-conjugacy) with ``Br_P(b) != 0``, and minimal ``P``
    with ``b`` in ``Tr_P^K(A_1^P)``.
    """
    p = ia.p if p is None else p
    h, k = ia.group, ia.normal
    x = ia.as_graded
    b = gl.as_mod(b, p)
    reps = gr.p_subgroup_reps(h, p, within=k)
    nonzero, traced = [], []
    for P in reps:
        _, kernel = it.brauer_kernel(x, P, check_splitting=False)
        if not kernel.contains(b):
            nonzero.append(P)
        if it.trace_image(x, ia.algebra.whole, P, k).contains(b):
            traced.append(P)
    if not nonzero or not traced:
        raise TheoremViolation("defect_group", "block has no defect group candidate", {"brauer": len(nonzero), "trace": len(traced)})
    top = max(q.order for q in nonzero)
    big = [q for q in nonzero if q.order == top]
    bottom = min(q.order for q in traced)
    small = [q for q in traced if q.order == bottom]
    if len(big) != 1 or len(small) != 1 or big[0] != small[0]:
        raise TheoremViolation(
            "defect_group",
            "maximal Brauer-nonvanishing and minimal trace subgroups disagree",
            {"brauer": [list(q.elements) for q in big], "trace": [list(q.elements) for q in small]},
        )
    P = big[0]
    conj = gr.conjugates(h, P, k)
    for q in nonzero:
        if not any(q.issubset(c) for c in conj):
            raise TheoremViolation("defect_group", "a Brauer-nonvanishing subgroup is not subconjugate to the defect group", {"subgroup": list(q.elements)})
    return DefectClass(
        P,
        tuple(conj),
        tuple(q.elements for q in nonzero),
        tuple(q.elements for q in traced),
    )


class Support(NamedTuple):
    elements: tuple[int, ...]
    spaces: dict[int, Subspace]


def graded_support_subgroup(x: GradedAlgebra, e, fixing: Subgroup, ambient: Iterable[int]) -> Support:
    """``{s in ambient : V_s V_{s^-1} = V_1}`` with ``V_s = e . (X_s)^fixing``.

    ``e`` must commute with every ``(X_s)^fixing`` for ``s`` in ``ambient``.
    """
    alg, p = x.algebra, x.p
    e = gl.as_mod(e, p)
    table = x.grading
    ambient = sorted(set(int(s) for s in ambient))
    if 0 not in ambient:
        raise ConstructionError("ambient subgroup must contain the identity")
    spaces = {}
    for s in ambient:
        fx = it.fixed_points(x, x.component(s), fixing)
        if fx.dim:
            left = alg.products(e[None, :], fx.basis)[0]
            right = alg.products(fx.basis, e[None, :])[:, 0]
            if not np.array_equal(left, right):
                raise ConstructionError(f"idempotent is not central on component {s}")
            spaces[s] = gl.echelon_basis(left, p, x.dim)
        else:
            spaces[s] = fx
    one = spaces[0]
    keep = []
    for s in ambient:
        si = int(table.inv[s])
        if si not in spaces:
            continue
        if alg.span_product(spaces[s], spaces[si]) == one:
            keep.append(s)
    if not is_subgroup(table, keep):
        raise TheoremViolation("support_subgroup", "support set is not a subgroup", {"elements": keep})
    return Support(tuple(keep), spaces)


def is_subgroup(table: GroupTable, elems: Iterable[int]) -> bool:
    s = set(int(v) for v in elems)
    if 0 not in s:
        return False
    return all(int(table.mul[a, b]) in s for a in s for b in s)


def is_normal_in(table: GroupTable, small: Iterable[int], big: Iterable[int]) -> bool:
    sm = set(small)
    return all(int(table.mul[table.mul[g, s], table.inv[g]]) in sm for g in big for s in sm)


def is_invariant(x: GradedAlgebra, elems: Iterable[int], acting: Iterable[int]) -> bool:
    sm = set(elems)
    return all(x.grading_action[h][s] in sm for h in acting for s in sm)


@dataclass(frozen=True, eq=False)
class ExtensionDescriptor:
    """The crossed product ``C = sum over the support of e (X_s)^fixing`` and ``C / C J(C_1)``.

    ``space`` is ``C`` inside the source algebra; ``algebra`` is ``C`` in the
    echelon coordinates of ``space``; ``quotient`` is the graded quotient with
    the induced action of ``acting``.  ``projection`` maps source coordinates
    (of elements of ``C``) to quotient coordinates, ``lift`` goes back.
    """

    label: str
    source: GradedAlgebra
    support: tuple[int, ...]
    space: Subspace
    algebra: FiniteAlgebra
    degree: tuple[int, ...]
    ideal: Subspace
    radical_is_induced: bool
    quotient: GradedAlgebra
    projection: np.ndarray
    lift: np.ndarray
    residue: FiniteAlgebra
    residue_locality: Locality
    frame: Mapping[int, tuple[np.ndarray, np.ndarray]]

    @property
    def residue_dim(self) -> int:
        return self.residue.dim

    @property
    def hu_order(self) -> int:
        return (self.source.p**self.residue_dim - 1) * len(self.support)

    def summary(self) -> dict:
        return {
            "grading_group": list(self.support),
            "residue_dim": self.residue_dim,
            "component_dims": {str(s): int(len(self.quotient.slot(s))) for s in self.support},
            "crossed_product_dim": self.algebra.dim,
            "radical_is_induced": self.radical_is_induced,
            "hU_order": self.hu_order,
        }


def crossed_product_quotient(
    x: GradedAlgebra,
    e,
    fixing: Subgroup,
    support: Iterable[int],
    acting: Subgroup,
    *,
    label: str = "C",
    seed: int = 0,
    attempts: int = al.UNIT_SEARCH_ATTEMPTS,
    exhaustive_cap: int = al.UNIT_EXHAUSTIVE_CAP,
    spaces: Mapping[int, Subspace] | None = None,
) -> ExtensionDescriptor:
    p = x.p
    e = gl.as_mod(e, p)
    support = tuple(sorted(set(int(s) for s in support)))
    if spaces is None:
        spaces = graded_support_subgroup(x, e, fixing, support).spaces
    for s in support:
        if not spaces[s].dim:
            raise TheoremViolation("crossed_product", "zero component in a support subgroup", {"component": s})
    w = gl.echelon_basis(np.concatenate([spaces[s].basis for s in support]), p, x.dim)
    c = al.subalgebra(x.algebra, w, unity=e)
    degree = tuple(x.degree[i] for i in w.pivots)
    idx1 = [i for i, s in enumerate(degree) if s == 0]
    c1_space = gl.echelon_basis(np.eye(c.dim, dtype=np.int64)[idx1], p, c.dim)
    c1 = al.subalgebra(c, c1_space)
    loc = al.is_local(c1)
    if not loc.local:
        raise ConstructionError(f"identity component of {label} is not local")
    j1 = al.radical(c1).space
    if j1.dim:
        j1_in_c = np.zeros((j1.dim, c.dim), dtype=np.int64)
        j1_in_c[:, idx1] = j1.basis
        ideal = gl.echelon_basis(c.products(np.eye(c.dim, dtype=np.int64), j1_in_c).reshape(-1, c.dim), p, c.dim)
    else:
        ideal = gl.zero_subspace(c.dim, p)
    if not al.is_two_sided_ideal(c, ideal):
        raise TheoremViolation("induced_radical", f"{label} J({label}_1) is not a two-sided ideal")
    if al.nilpotency_index(c, ideal) is None:
        raise TheoremViolation("induced_radical", f"{label} J({label}_1) is not nilpotent")
    radical_is_induced = al.radical(c).space == ideal
    quo = al.quotient_by_ideal(c, ideal) if ideal.dim else al.Quotient(
        c, np.eye(c.dim, dtype=np.int64), np.eye(c.dim, dtype=np.int64), ideal
    )
    comp = ideal.complement_indices()
    qdeg = tuple(degree[i] for i in comp)
    projection = np.zeros((quo.algebra.dim, x.dim), dtype=np.int64)
    projection[:, list(w.pivots)] = quo.projection
    lift = gl.matmul(w.basis.T, quo.lift, p)
    action = {}
    ideal_src = gl.matmul(ideal.basis, w.basis, p) if ideal.dim else None
    for n in acting.elements:
        m = x.action[n]
        moved = gl.matmul(w.basis, m.T, p)
        if not w.contains(moved):
            raise TheoremViolation("crossed_product_action", f"{label} is not invariant under element {n}")
        if ideal_src is not None:
            moved_i = gl.matmul(ideal_src, m.T, p)
            if not ideal.contains(w.coords(moved_i)):
                raise TheoremViolation("crossed_product_action", f"{label} J({label}_1) is not invariant under element {n}")
        action[n] = gl.matmul(gl.matmul(projection, m, p), lift, p)
    gact = {n: x.grading_action[n] for n in acting.elements}
    qx = GradedAlgebra(quo.algebra, x.grading, qdeg, acting, action, gact)
    q1 = qx.component(0)
    residue = al.subalgebra(qx.algebra, q1)
    rdim = residue.dim
    frame = {}
    for s in support:
        cs = qx.component(s)
        if cs.dim != rdim:
            raise TheoremViolation(
                "crossed_product_dimension", f"component of {label} has dimension {cs.dim}, residue field {rdim}", {"component": s}
            )
        hit = al.find_unit_in_subspace(
            qx.algebra, cs, qx.component(int(x.grading.inv[s])), seed=seed + s, attempts=attempts, exhaustive_cap=exhaustive_cap
        )
        if hit is None:
            raise ConstructionError(f"no homogeneous unit found in component {s} of {label} within the search budget")
        u, v = hit
        if qx.algebra.span_product(_span_of(qx.algebra, u), q1) != cs or qx.algebra.span_product(q1, _span_of(qx.algebra, u)) != cs:
            raise TheoremViolation("unit_frame", f"unit does not generate component {s} of {label}", {"component": s})
        frame[s] = (u, v)
    return ExtensionDescriptor(
        label, x, support, w, c, degree, ideal, bool(radical_is_induced), qx, projection, lift, residue, loc, frame
    )


def _span_of(alg: FiniteAlgebra, v) -> Subspace:
    return gl.echelon_basis(np.asarray(v)[None, :], alg.p, alg.dim)


@dataclass
class CheckResult:
    passed: bool
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"status": "pass" if self.passed else "fail", "witness": self.witness}


def _graded_map(
    src: ExtensionDescriptor,
    dst: ExtensionDescriptor,
    to_dst_source,
    grading_map: Mapping[int, int],
) -> tuple[np.ndarray, dict]:
    """Matrix of the map induced on quotients by ``to_dst_source`` (source coords -> dst source coords)."""
    p = src.source.p
    problems = {}
    images = to_dst_source(src.lift.T)
    if not dst.space.contains(images):
        problems["image_outside_target"] = True
    m = gl.matmul(dst.projection, images.T, p)
    if src.ideal.dim:
        ideal_src = gl.matmul(src.ideal.basis, src.space.basis, p)
        img = to_dst_source(ideal_src)
        if not dst.space.contains(img) or gl.matmul(dst.projection, img.T, p).any():
            problems["radical_not_preserved"] = True
    full = to_dst_source(src.space.basis)
    if not dst.space.contains(full):
        problems["crossed_product_not_preserved"] = True
    for s in src.support:
        t = grading_map[s]
        cols = src.quotient.slot(s)
        rows = dst.quotient.slot(t)
        if len(rows) == 0:
            problems.setdefault("missing_component", []).append(int(s))
            continue
        outside = np.delete(m[:, cols], rows, axis=0)
        if outside.any():
            problems.setdefault("not_graded", []).append(int(s))
    return m, problems


def _multiplicative(m: np.ndarray, src: FiniteAlgebra, dst: FiniteAlgebra) -> tuple[bool, dict]:
    p = src.p
    d = src.dim
    basis = np.eye(d, dtype=np.int64)
    lhs = gl.matmul(src.products(basis, basis).reshape(d * d, d), m.T, p)
    img = m.T
    rhs = dst.products(img, img).reshape(d * d, -1)
    if np.array_equal(lhs, rhs):
        return True, {}
    k = int(np.argwhere((lhs != rhs).any(axis=1))[0][0])
    return False, {"basis_pair": [k // d, k % d]}


def _equivariant(m: np.ndarray, src: GradedAlgebra, dst: GradedAlgebra, gens: Iterable[int]) -> tuple[bool, dict]:
    p = src.p
    for n in gens:
        if not np.array_equal(gl.matmul(m, src.action[n], p), gl.matmul(dst.action[n], m, p)):
            return False, {"generator": int(n)}
    return True, {}


def _homogeneous_units(ext: ExtensionDescriptor, cap: int) -> list[tuple[int, np.ndarray]] | None:
    if ext.hu_order > cap:
        return None
    q = ext.quotient
    p = q.p
    out = []
    for s in ext.support:
        comp = q.component(s)
        for coeffs in itertools.product(range(p), repeat=comp.dim):
            if any(coeffs):
                out.append((s, gl.matmul(np.array(coeffs, dtype=np.int64), comp.basis, p)))
    return out


def unit_group_profile(ext: ExtensionDescriptor, cap: int = HU_CAP, pair_cap: int = HU_PAIR_CAP) -> dict:
    """Order of ``hU`` and, for small groups, its element-order histogram and commutativity."""
    units = _homogeneous_units(ext, cap)
    out = {"order": ext.hu_order, "enumerated": units is not None}
    if units is None or len(units) > pair_cap:
        return out
    alg = ext.quotient.algebra
    one = alg.unity
    hist = Counter()
    for _, u in units:
        k, cur = 1, u
        while not np.array_equal(cur, one):
            cur = alg.product(cur, u)
            k += 1
            if k > len(units):
                raise TheoremViolation("homogeneous_units", "element of infinite order in a finite unit group")
        hist[k] += 1
    vecs = np.stack([u for _, u in units])
    ab = np.array_equal(alg.products(vecs, vecs), alg.products(vecs, vecs).transpose(1, 0, 2))
    out["element_orders"] = {str(k): v for k, v in sorted(hist.items())}
    out["abelian"] = bool(ab)
    return out


def _unit_map_check(src: ExtensionDescriptor, dst: ExtensionDescriptor, m: np.ndarray, bijective: bool, cap: int, pair_cap: int) -> CheckResult:
    units = _homogeneous_units(src, cap)
    target = _homogeneous_units(dst, cap)
    if units is None or target is None:
        return CheckResult(True, {"skipped": f"hU larger than cap {cap}"})
    p = src.source.p
    imgs = [gl.matmul(m, u, p) for _, u in units]
    keys = {tuple(v.tolist()) for v in imgs}
    tkeys = {tuple(u.tolist()) for _, u in target}
    witness = {"source_order": len(units), "target_order": len(target)}
    if len(keys) != len(imgs) or not keys <= tkeys:
        return CheckResult(False, witness | {"problem": "not injective into homogeneous units"})
    if bijective and keys != tkeys:
        return CheckResult(False, witness | {"problem": "not surjective onto homogeneous units"})
    if len(units) <= pair_cap:
        a, b = src.quotient.algebra, dst.quotient.algebra
        vecs = np.stack([u for _, u in units])
        prods = a.products(vecs, vecs).reshape(-1, a.dim)
        lhs = gl.matmul(prods, m.T, p)
        iv = np.stack(imgs)
        rhs = b.products(iv, iv).reshape(-1, b.dim)
        if not np.array_equal(lhs, rhs):
            return CheckResult(False, witness | {"problem": "not a group homomorphism"})
        witness["pairs_checked"] = len(units) ** 2
    return CheckResult(True, witness)


def certify_graded_map(
    src: ExtensionDescriptor,
    dst: ExtensionDescriptor,
    to_dst_source,
    grading_map: Mapping[int, int],
    generator_pairs: Iterable[tuple[int, int]] = (),
    *,
    bijective: bool = True,
    hu_cap: int = HU_CAP,
    pair_cap: int = HU_PAIR_CAP,
) -> tuple[np.ndarray, dict[str, CheckResult]]:
    """Matrix of the induced map of quotients and the checks it passes.

    ``to_dst_source`` maps rows of source coordinates of ``src`` to rows of
    source coordinates of ``dst``.  ``generator_pairs`` lists ``(g, g')`` with
    ``g`` acting on ``src`` and ``g'`` the same element acting on ``dst``.
    """
    p = src.source.p
    checks: dict[str, CheckResult] = {}
    m, problems = _graded_map(src, dst, to_dst_source, grading_map)
    missing = [int(t) for t in src.support if grading_map[t] not in dst.support]
    if missing:
        problems["grading_outside_target"] = missing
    checks["well_defined"] = CheckResult(not problems, problems | {"grading_map": {str(k): int(v) for k, v in grading_map.items()}})
    r = gl.rank(m, p)
    checks["injective"] = CheckResult(r == m.shape[1], {"rank": int(r), "source_dim": int(m.shape[1])})
    if bijective:
        image = sorted(int(grading_map[s]) for s in src.support)
        ok = image == list(dst.support) and not problems
        bad = None
        if ok:
            for s in src.support:
                block = m[np.ix_(dst.quotient.slot(grading_map[s]), src.quotient.slot(s))]
                if block.shape[0] != block.shape[1] or gl.inverse(block, p) is None:
                    ok, bad = False, int(s)
                    break
        checks["componentwise_bijective"] = CheckResult(
            ok, {"source_support": list(src.support), "target_support": list(dst.support)} | ({"component": bad} if bad is not None else {})
        )
        block = m[np.ix_(dst.quotient.slot(grading_map[0]), src.quotient.slot(0))]
        ident = block.shape[0] == block.shape[1] and gl.inverse(block, p) is not None
        checks["residue_fields_isomorphic"] = CheckResult(ident, {"dims": [src.residue_dim, dst.residue_dim]})
    ok, w = _multiplicative(m, src.quotient.algebra, dst.quotient.algebra)
    checks["multiplicative"] = CheckResult(ok, w)
    pairs = list(generator_pairs)
    for g, g2 in pairs:
        if not np.array_equal(gl.matmul(m, src.quotient.action[g], p), gl.matmul(dst.quotient.action[g2], m, p)):
            checks["equivariant"] = CheckResult(False, {"generator": int(g)})
            break
    else:
        checks["equivariant"] = CheckResult(True, {"generators": [int(g) for g, _ in pairs]})
    checks["unit_groups"] = _unit_map_check(src, dst, m, bijective, hu_cap, pair_cap)
    return m, checks


@dataclass
class Comparison:
    matrix: np.ndarray
    checks: dict[str, CheckResult]
    embedding: np.ndarray | None = None
    embedding_checks: dict[str, CheckResult] = field(default_factory=dict)


def compare_extensions(
    ext_c: ExtensionDescriptor,
    ext_e: ExtensionDescriptor,
    via: BrauerData,
    generators: Iterable[int],
    ext_d: ExtensionDescriptor | None = None,
    psi: it.PsiCertificate | None = None,
    *,
    hu_cap: int = HU_CAP,
    pair_cap: int = HU_PAIR_CAP,
    d_bijective: bool = False,
) -> Comparison:
    """Certify ``C/CJ(C_1) -> E/EJ(E_1)`` induced by ``via`` and, with ``ext_d``, ``D/DJ(D_1) -> E/EJ(E_1)`` through ``psi``."""
    pairs = [(g, g) for g in generators]
    p = via.source.p
    m, checks = certify_graded_map(
        ext_c, ext_e, via.apply_many, {s: s for s in ext_c.support}, pairs, hu_cap=hu_cap, pair_cap=pair_cap
    )
    if ext_d is None:
        return Comparison(m, checks)
    if psi is None:
        raise ConstructionError("the second extension needs the psi certificate")
    gmap = {t: psi.tau_to_sigma[t] for t in ext_d.support}
    emb, dchecks = certify_graded_map(
        ext_d,
        ext_e,
        lambda rows: gl.matmul(rows, psi.matrix.T, p),
        gmap,
        pairs,
        bijective=d_bijective,
        hu_cap=hu_cap,
        pair_cap=pair_cap,
    )
    return Comparison(m, checks, emb, dchecks)


def second_extension_components(r: GradedAlgebra, bbar_r, rq: QuotientMap, stabilizer_cosets: Iterable[int], tau_to_sigma) -> dict:
    """Dimension of ``bbar R_t bbar`` for every ``t``, marking whether ``t`` lies in the stabilizer."""
    p = r.p
    stab = set(stabilizer_cosets)
    out = {}
    for t in range(rq.quotient.order):
        comp = r.component(t)
        left = r.algebra.products(np.asarray(bbar_r)[None, :], comp.basis)[0]
        both = r.algebra.products(left, np.asarray(bbar_r)[None, :])[:, 0]
        dim = gl.rank(both, p)
        out[str(t)] = {"dim": int(dim), "in_stabilizer": t in stab, "grading_element": int(tau_to_sigma[t])}
    return out


@dataclass(frozen=True, eq=False)
class Correspondent:
    interior: InteriorAlgebra
    index: int
    idempotent: np.ndarray
    subgroup: Subgroup
    local_subgroup: Subgroup
    defect: DefectClass
    truncated: np.ndarray


def truncated_brauer_image(ia: InteriorAlgebra, b, P: Subgroup) -> tuple[np.ndarray, Subgroup]:
    """``Br_P(b)`` as a vector over ``C_K(P)`` (coordinates follow its sorted elements) for a canonical instance."""
    if not ia.canonical:
        raise UnsupportedError("Brauer correspondents are only available for group algebras")
    bd = it.brauer_quotient_graded(ia, P)
    ck = gr.centralizer(ia.group, P, within=ia.normal)
    t = it.truncation_certificate(bd, ia.normal.elements, ck)
    return gl.matmul(t, bd(b), ia.p), ck


def brauer_correspondent(ia: InteriorAlgebra, b, P: Subgroup) -> Correspondent:
    """The unique block of ``GF(p)[N_K(P)]`` with the same Brauer image as ``b``.

    The returned interior algebra is ``GF(p)[N_K(P)]`` as an
    ``N_K(P)``-interior ``N_H(P)``-algebra on the induced table of ``N_H(P)``.
    """
    if not ia.canonical:
        raise UnsupportedError("Brauer correspondents are only available for group algebras")
    h, k, p = ia.group, ia.normal, ia.p
    target, ck = truncated_brauer_image(ia, b, P)
    nh = gr.normalizer(h, P)
    nk = Subgroup(h, tuple(x for x in nh.elements if x in k), _check=False)
    table = gr.induced_table(nh)
    ia_n = it.canonical_interior(table, gr.restrict_to(table, nk), p)
    p_local = gr.restrict_to(table, P)
    hits = []
    for i, e in enumerate(al.central_primitive_idempotents(ia_n.algebra)):
        img, ck_n = truncated_brauer_image(ia_n, e, p_local)
        # compare on top-level element indices
        order = np.argsort([table.embedding[c] for c in ck_n.elements])
        if [table.embedding[c] for c in np.array(ck_n.elements)[order]] != list(ck.elements):
            raise TheoremViolation("brauer_correspondent", "centralizers computed in H and N_H(P) differ")
        if np.array_equal(img[order], target):
            hits.append((i, e))
    if len(hits) != 1:
        raise TheoremViolation("brauer_correspondent", f"{len(hits)} blocks of the normalizer match", {"matches": [i for i, _ in hits]})
    i, e = hits[0]
    dc = defect_groups(ia_n, e)
    conj = gr.conjugates(table, p_local, ia_n.normal)
    if not any(dc.representative == c for c in conj):
        raise TheoremViolation("brauer_correspondent", "correspondent has a different defect group", {"defect": list(dc.representative.elements)})
    return Correspondent(ia_n, i, e, P, p_local, dc, target)
