"""Finite groups as multiplication tables.

Everything here is exhaustive: groups are small (capped at ``MAX_ORDER``
elements by default) so subgroup closure, normalizers and conjugacy are
computed by direct enumeration over the table.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConstructionError
from .gf_linalg import check_prime

MAX_ORDER = 96


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Multiplication table with identity at index 0.

    ``perms`` holds the permutation realising each element when the group was
    built from generators.  ``embedding`` maps local indices to the indices of
    a parent table when this table was induced from a subgroup.
    """

    mul: np.ndarray
    inv: np.ndarray
    perms: tuple[tuple[int, ...], ...] | None = None
    embedding: tuple[int, ...] | None = None

    def __post_init__(self):
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order})"

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = int(self.mul[x, g])
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: GroupTable
    elements: tuple[int, ...]
    _check: bool = field(default=True, repr=False)

    def __post_init__(self):
        els = tuple(sorted(set(int(e) for e in self.elements)))
        object.__setattr__(self, "elements", els)
        if self._check:
            n = self.parent.order
            if any(e < 0 or e >= n for e in els):
                raise ConstructionError(f"subgroup elements out of range 0..{n - 1}")
            if not els or els[0] != 0:
                raise ConstructionError("subgroup must contain the identity")
            arr = np.array(els)
            prods = self.parent.mul[np.ix_(arr, arr)]
            if not np.all(np.isin(prods, arr)):
                raise ConstructionError("element set is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return int(g) in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        span = {0}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = set(closure(self.parent, gens).elements)
                if len(span) == self.order:
                    break
        return tuple(gens)


def _perm_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # (a*b)(i) = a(b(i)): apply b first
    return tuple(a[i] for i in b)


def build_group(generators=None, table=None, degree: int | None = None, max_order: int = MAX_ORDER) -> GroupTable:
    """Group from permutation generators (0-based images) or from an explicit table.

    Elements generated from permutations are numbered breadth-first: each
    discovered element is right-multiplied by the generators in input order.
    """
    if table is not None:
        return _validate_table(np.asarray(table, dtype=np.int64))
    gens = [tuple(int(i) for i in g) for g in (generators or [])]
    if gens:
        n = len(gens[0])
        for g in gens:
            if len(g) != n or sorted(g) != list(range(n)):
                raise ConstructionError(f"generator {list(g)} is not a permutation of 0..{n - 1}")
    else:
        n = degree or 0
    ident = tuple(range(n))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _perm_mul(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                if len(elements) > max_order:
                    raise ConstructionError(f"group order exceeds the cap of {max_order}")
                queue.append(y)
    m = len(elements)
    mul = np.empty((m, m), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mul[i, j] = index[_perm_mul(a, b)]
    inv = np.argmin(mul, axis=1).astype(np.int64)
    return GroupTable(mul, inv, perms=tuple(elements))


def _validate_table(mul: np.ndarray) -> GroupTable:
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise ConstructionError("invalid table: must be a non-empty square array")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise ConstructionError("invalid table: entries out of range")
    target = np.arange(n)
    if not (np.array_equal(mul[0], target) and np.array_equal(mul[:, 0], target)):
        raise ConstructionError("invalid table: element 0 must be the identity")
    for axis in (0, 1):
        if not np.all(np.sort(mul, axis=axis) == (target[:, None] if axis == 0 else target[None, :])):
            raise ConstructionError("invalid table: not a Latin square")
    # (ab)c == a(bc) for every triple
    left = mul[mul[:, :, None], target[None, None, :]]
    right = mul[target[:, None, None], mul[None, :, :]]
    if not np.array_equal(left, right):
        raise ConstructionError("invalid table: multiplication is not associative")
    inv = np.argmin(mul, axis=1).astype(np.int64)
    return GroupTable(mul.copy(), inv)


def closure(g: GroupTable, elements) -> Subgroup:
    """Subgroup generated by ``elements``."""
    found = {0}
    frontier = [0]
    gens = sorted(set(int(e) for e in elements))
    for e in gens:
        if not 0 <= e < g.order:
            raise ConstructionError(f"element index {e} out of range")
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(g.mul[x, s])
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(g, tuple(found), _check=False)


def as_subgroup(g: GroupTable, s) -> Subgroup:
    if isinstance(s, Subgroup):
        if s.parent is not g:
            raise ConstructionError("subgroup belongs to a different group table")
        return s
    return Subgroup(g, tuple(s))


def conjugate(g: GroupTable, s: Subgroup, x: int) -> Subgroup:
    """``x S x^-1``."""
    arr = np.array(s.elements)
    return Subgroup(g, tuple(g.mul[g.mul[x, arr], g.inv[x]].tolist()), _check=False)


def normalizer(g: GroupTable, s, within: Subgroup | None = None) -> Subgroup:
    s = as_subgroup(g, s)
    pool = within.elements if within is not None else range(g.order)
    return Subgroup(g, tuple(x for x in pool if conjugate(g, s, x) == s), _check=False)


def centralizer(g: GroupTable, s, within: Subgroup | None = None) -> Subgroup:
    elems = np.array(sorted(set(int(e) for e in (s.elements if isinstance(s, Subgroup) else s))) or [0])
    pool = within.elements if within is not None else range(g.order)
    keep = [x for x in pool if np.array_equal(g.mul[x, elems], g.mul[elems, x])]
    return Subgroup(g, tuple(keep), _check=False)


def is_normal(g: GroupTable, s, within: Subgroup | None = None) -> bool:
    s = as_subgroup(g, s)
    pool = within.elements if within is not None else range(g.order)
    return all(conjugate(g, s, x) == s for x in pool)


def conjugates(g: GroupTable, s, within: Subgroup | None = None) -> list[Subgroup]:
    """Orbit of ``s`` under conjugation, sorted by element list."""
    s = as_subgroup(g, s)
    pool = within.elements if within is not None else range(g.order)
    seen = {}
    for x in pool:
        c = conjugate(g, s, x)
        seen.setdefault(c.elements, c)
    return [seen[k] for k in sorted(seen)]


def subgroup_ops(g: GroupTable, s, mode: str, within: Subgroup | None = None):
    if mode == "closure":
        return closure(g, s.elements if isinstance(s, Subgroup) else s)
    if mode == "normalizer":
        return normalizer(g, s, within)
    if mode == "centralizer":
        return centralizer(g, s, within)
    if mode == "is_normal":
        return is_normal(g, s, within)
    if mode == "conjugates":
        return conjugates(g, s, within)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """``G -> G/N`` with cosets numbered by their least element.

    ``section[c]`` is the least element index of coset ``c``; coset 0 is ``N``.
    """

    parent: GroupTable
    normal: Subgroup
    quotient: GroupTable
    projection: tuple[int, ...]
    section: tuple[int, ...]

    def coset(self, c: int) -> tuple[int, ...]:
        return tuple(i for i, q in enumerate(self.projection) if q == c)

    def image(self, s) -> tuple[int, ...]:
        return tuple(sorted({self.projection[x] for x in s}))

    def preimage(self, cosets) -> Subgroup:
        cs = set(int(c) for c in cosets)
        return Subgroup(self.parent, tuple(i for i, q in enumerate(self.projection) if q in cs), _check=False)


def quotient_group(g: GroupTable, n: Subgroup, within: Subgroup | None = None) -> QuotientMap:
    """Quotient of ``within`` (default all of ``g``) by the normal subgroup ``n``.

    Elements outside ``within`` get projection ``-1``.
    """
    n = as_subgroup(g, n)
    dom = within if within is not None else g.whole
    if not n.issubset(dom):
        raise ConstructionError("normal subgroup is not contained in the group")
    if not is_normal(g, n, dom):
        raise ConstructionError("subgroup is not normal")
    proj = [-1] * g.order
    section: list[int] = []
    narr = np.array(n.elements)
    for x in dom.elements:
        if proj[x] >= 0:
            continue
        c = len(section)
        section.append(x)
        for y in g.mul[x, narr]:
            proj[int(y)] = c
    m = len(section)
    qmul = np.empty((m, m), dtype=np.int64)
    for i, a in enumerate(section):
        for j, b in enumerate(section):
            qmul[i, j] = proj[int(g.mul[a, b])]
    qinv = np.argmin(qmul, axis=1).astype(np.int64)
    return QuotientMap(g, n, GroupTable(qmul, qinv), tuple(proj), tuple(section))


def induced_table(s: Subgroup) -> GroupTable:
    """The subgroup as a group in its own right; local index i is ``s.elements[i]``."""
    g = s.parent
    els = s.elements
    local = {e: i for i, e in enumerate(els)}
    mul = np.array([[local[int(g.mul[a, b])] for b in els] for a in els], dtype=np.int64)
    inv = np.array([local[int(g.inv[a])] for a in els], dtype=np.int64)
    perms = tuple(g.perms[e] for e in els) if g.perms is not None else None
    return GroupTable(mul, inv, perms=perms, embedding=els)


def restrict_to(table: GroupTable, s: Subgroup) -> Subgroup:
    """Express a subgroup of the parent of ``table`` in ``table``'s local indices."""
    local = {e: i for i, e in enumerate(table.embedding)}
    try:
        return Subgroup(table, tuple(local[e] for e in s.elements))
    except KeyError:
        raise ConstructionError("subgroup is not contained in the induced table") from None


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_group(s: Subgroup, p: int) -> bool:
    return p_part(s.order, p) == s.order


def sylow_subgroup(g: GroupTable, p: int, within: Subgroup | None = None) -> Subgroup:
    """One Sylow p-subgroup, grown one normalizing p-element at a time."""
    check_prime(p)
    dom = within if within is not None else g.whole
    target = p_part(dom.order, p)
    orders = g.element_orders
    pelems = [x for x in dom.elements if p_part(orders[x], p) == orders[x] and x != 0]
    cur = g.trivial
    while cur.order < target:
        for x in pelems:
            if x in cur:
                continue
            if conjugate(g, cur, x) == cur:
                cur = closure(g, cur.elements + (x,))
                break
        else:  # pragma: no cover - Sylow theory guarantees progress
            raise AssertionError("failed to enlarge a non-Sylow p-subgroup")
    return cur


def all_subgroups(g: GroupTable, s: Subgroup) -> list[Subgroup]:
    """Every subgroup of ``s``, sorted by (order, elements)."""
    found = {(0,): g.trivial}
    layer = [g.trivial]
    while layer:
        nxt = []
        for h in layer:
            for x in s.elements:
                if x in h:
                    continue
                c = closure(g, h.elements + (x,))
                if c.elements not in found:
                    found[c.elements] = c
                    nxt.append(c)
        layer = nxt
    return sorted(found.values(), key=lambda h: (h.order, h.elements))


def p_subgroup_reps(g: GroupTable, p: int, within: Subgroup | None = None) -> list[Subgroup]:
    """One representative per conjugacy class of p-subgroups.

    Subgroups of a single Sylow subgroup are fused under conjugation by
    ``within`` (default the whole group).  Each class is represented by its
    lexicographically least member; the list is sorted by order.
    """
    check_prime(p)
    dom = within if within is not None else g.whole
    syl = sylow_subgroup(g, p, dom)
    reps: dict[tuple[int, ...], Subgroup] = {}
    for h in all_subgroups(g, syl):
        least = conjugates(g, h, dom)[0]
        reps.setdefault(least.elements, least)
    return sorted(reps.values(), key=lambda h: (h.order, h.elements))


def maximal_subgroups(g: GroupTable, s: Subgroup) -> list[Subgroup]:
    subs = [h for h in all_subgroups(g, s) if h.order < s.order]
    return [h for h in subs if not any(h.order < k.order and h.issubset(k) for k in subs)]


def left_transversal(g: GroupTable, big: Subgroup, small: Subgroup, pick: str = "min") -> list[int]:
    """One representative of each left coset ``x small`` inside ``big``."""
    seen: set[int] = set()
    reps = []
    sarr = np.array(small.elements)
    order = big.elements if pick == "min" else tuple(reversed(big.elements))
    for x in order:
        if x in seen:
            continue
        coset = g.mul[x, sarr].tolist()
        seen.update(coset)
        reps.append(min(coset) if pick == "min" else max(coset))
    return reps


def cyclic_permutation(n: int) -> list[int]:
    return [(i + 1) % n for i in range(n)]
