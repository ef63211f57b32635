"""Brute-force recomputation of support subgroups and radicals for small group algebras.

Nothing here goes through the echelon routines, the Brauer quotient or the
radical algorithms of the main pipeline.  Elements of GF(p)[H] are dicts
``{group element: coefficient}``; the Brauer quotient is replaced by
truncation to the centralizer, and radicals come from enumerating every
element of the algebra.
"""

from __future__ import annotations

import itertools

import numpy as np

from .clifford import CheckResult


def _rank(rows: list[list[int]], p: int) -> int:
    m = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                f = m[i][col]
                m[i] = [(a - f * c) % p for a, c in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


class GroupRing:
    def __init__(self, mul, inv, p):
        self.mul = [list(map(int, row)) for row in mul]
        self.inv = [int(v) for v in inv]
        self.p = p
        self.n = len(self.mul)

    def times(self, x: dict, y: dict, keep=None) -> dict:
        out: dict[int, int] = {}
        for g, a in x.items():
            row = self.mul[g]
            for h, c in y.items():
                k = row[h]
                if keep is None or k in keep:
                    out[k] = (out.get(k, 0) + a * c) % self.p
        return {k: v for k, v in out.items() if v}

    def conj(self, g: int, x: dict) -> dict:
        gi = self.inv[g]
        return {self.mul[self.mul[g][h]][gi]: c for h, c in x.items()}

    def vec(self, x: dict) -> list[int]:
        v = [0] * self.n
        for k, c in x.items():
            v[k] = c % self.p
        return v

    def orbit_sums(self, support, acting) -> list[dict]:
        seen, out = set(), []
        for g in sorted(support):
            if g in seen:
                continue
            orb = {self.mul[self.mul[a][g]][self.inv[a]] for a in acting}
            seen |= orb
            out.append({h: 1 for h in orb})
        return out

    def span_product_is(self, vs, ws, ones) -> bool:
        prods = [self.vec(self.times(v, w)) for v in vs for w in ws]
        base = [self.vec(v) for v in ones]
        r1 = _rank(base, self.p) if base else 0
        if not prods:
            return r1 == 0
        return _rank(prods, self.p) == r1 and _rank(prods + base, self.p) == r1


def _cosets(ring: GroupRing, normal: set[int], within) -> list[frozenset[int]]:
    seen, out = set(), []
    for x in sorted(within):
        if x in seen:
            continue
        c = frozenset(ring.mul[x][k] for k in normal)
        seen |= c
        out.append(c)
    return out


def support_subgroup(ring, e, cosets, acting, ambient_idx, keep=None) -> set[int]:
    """Indices ``i`` in ``ambient_idx`` with ``V_i V_{i^-1} = V_1`` where ``V_i = e . (orbit sums on coset i)``."""
    spaces = {}
    for i in ambient_idx:
        spaces[i] = [ring.times(e, o, keep) for o in ring.orbit_sums(cosets[i], acting)]
        spaces[i] = [v for v in spaces[i] if v]
    rep = {i: min(cosets[i]) for i in ambient_idx}
    where = {g: i for i, c in enumerate(cosets) for g in c}
    one = where[0]
    out = set()
    for i in ambient_idx:
        j = where[ring.inv[rep[i]]]
        if j in spaces and ring.span_product_is(spaces[i], spaces[j], spaces[one]):
            out.add(i)
    return out


def radical_by_enumeration(mul: np.ndarray, p: int, cap: int) -> list[tuple[int, ...]] | None:
    """All elements ``x`` with ``a x`` nilpotent for every ``a``; ``None`` if ``p**d`` exceeds ``cap``."""
    d = mul.shape[0]
    if p**d > cap:
        return None
    elems = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)
    weights = p ** np.arange(d - 1, -1, -1)

    def prod(x, y):
        return np.einsum("ni,nj,ijk->nk", x, y, mul) % p

    cur = elems.copy()
    for _ in range(d):
        cur = prod(cur, elems)
    nil = ~cur.any(axis=1)
    out = []
    for idx in np.nonzero(nil)[0]:
        x = elems[idx]
        right = np.einsum("j,ijk->ik", x, mul) % p  # row i: e_i * x
        ax = (elems @ right) % p
        if nil[ax @ weights].all():
            out.append(tuple(int(v) for v in x))
    return out


def cross_check(ctx, analysis, cap: int) -> CheckResult:
    """Compare every support subgroup, the stabilizers and the radicals with brute force."""
    from . import algebras as al

    ia = ctx.interior
    h, p = ia.group, ia.p
    ring = GroupRing(h.mul, h.inv, p)
    n = ring.n
    kset = set(ia.normal.elements)
    rec = analysis.record
    b = {g: int(c) for g, c in zip(ia.normal.elements, rec["idempotent"]) if c % p}
    P = set(rec["defect_group"])
    cosets = _cosets(ring, kset, range(n))
    # main numbering: coset containing least element x is q.projection[x]
    q = ctx.envelope.quotient
    to_main = [q.projection[min(c)] for c in cosets]

    def main_ids(idx):
        return sorted(to_main[i] for i in idx)

    everything = list(range(n))
    stab_h = [g for g in everything if ring.conj(g, b) == b]
    g_b = sorted({i for i, c in enumerate(cosets) if c & set(stab_h)})
    nh = [g for g in everything if {ring.mul[ring.mul[g][x]][ring.inv[g]] for x in P} == P]
    ch = [g for g in everything if all(ring.mul[g][x] == ring.mul[x][g] for x in P)]
    nk = [g for g in nh if g in kset]
    ck = set(ch) & kset
    chs = set(ch)
    nh_b = [g for g in nh if g in stab_h]
    found: dict[str, list[int]] = {}
    found["G_b"] = main_ids(g_b)
    found["G[b]"] = main_ids(support_subgroup(ring, b, cosets, sorted(kset), g_b))
    t1 = support_subgroup(ring, b, cosets, sorted(P), g_b)
    found["T_1"] = main_ids(t1)
    found["T_1[b]"] = main_ids(support_subgroup(ring, b, cosets, sorted(kset), sorted(t1)))
    # Brauer quotient of GF(p)[H] at P: truncation to C_H(P)
    bbar = {g: c for g, c in b.items() if g in ck}
    trunc = [frozenset(c & chs) for c in cosets]
    t2_set = _with_empty(ring, bbar, trunc, [0], g_b, chs)
    found["T_2"] = main_ids(t2_set)
    found["G[bbar]"] = main_ids(_with_empty(ring, bbar, trunc, nk, g_b, chs))
    found["T_2[bbar]"] = main_ids(_with_empty(ring, bbar, trunc, nk, sorted(t2_set), chs))
    nh_b_cosets = sorted({i for i, c in enumerate(cosets) if c & set(nh_b)})
    found["N_H(P)[bbar]"] = main_ids(_with_empty(ring, bbar, trunc, nk, nh_b_cosets, chs))
    # R is GF(p)[C_H(P)] graded by C_H(P)/C_K(P)
    r_cosets = _cosets(ring, ck, ch)
    ch_bbar = [g for g in ch if ring.conj(g, bbar) == bbar]
    amb = [i for i, c in enumerate(r_cosets) if c & set(ch_bbar)]
    c_sup = support_subgroup(ring, bbar, r_cosets, nk, amb, keep=chs)
    where = {g: i for i, c in enumerate(cosets) for g in c}
    found["C_H(P)[bbar]"] = main_ids({where[min(r_cosets[i])] for i in c_sup})

    sup = rec["support_subgroups"]
    main = {
        "G_b": rec["stabilizers"]["G_b"],
        "G[b]": sup["G[b]"],
        "T_1": sup["T_1"],
        "T_1[b]": sup["T_1[b]"],
        "T_2": sup["T_2"],
        "G[bbar]": sup["G[bbar]"],
        "T_2[bbar]": sup["T_2[bbar]"],
        "N_H(P)[bbar]": sup["N_H(P)[bbar]"],
        "C_H(P)[bbar]": sup["C_H(P)[bbar]_in_G"],
    }
    mismatch = {k: {"main": main[k], "oracle": v} for k, v in found.items() if sorted(main[k]) != v}

    radicals = {}
    for label, alg in (("A_1", ia.algebra), ("A", ctx.envelope.algebra)):
        brute = radical_by_enumeration(alg.mul, p, cap)
        if brute is None:
            radicals[label] = "skipped: algebra larger than the enumeration cap"
            continue
        jac = al.radical(alg).space
        agree = len(brute) == p**jac.dim and jac.contains(np.array(brute, dtype=np.int64))
        radicals[label] = {"dim": int(jac.dim), "elements": len(brute), "agree": bool(agree)}
        if not agree:
            mismatch[f"radical {label}"] = {"main_dim": int(jac.dim), "oracle_elements": len(brute)}
    return CheckResult(not mismatch, {"subgroups": found, "radicals": radicals} | ({"mismatch": mismatch} if mismatch else {}))


def _with_empty(ring, e, trunc, acting, ambient, keep) -> set[int]:
    # components with no element in C_H(P) are zero and never qualify, except the identity
    idx = [i for i in ambient if trunc[i]]
    return support_subgroup(ring, e, trunc, acting, idx, keep=keep)
