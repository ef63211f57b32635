"""Finite-dimensional associative unital algebras over GF(p).

An algebra is a structure-constant tensor ``mul[i, j] = e_i * e_j`` together
with the coordinate vector of its unit.  Construction always validates
associativity and the unit; every object built on top of an algebra relies
on that.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import gf_linalg as gl
from .errors import ConstructionError
from .gf_linalg import Subspace
from .groups import GroupTable

log = logging.getLogger(__name__)

UNIT_SEARCH_ATTEMPTS = 512
UNIT_EXHAUSTIVE_CAP = 2**16


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    p: int
    mul: np.ndarray
    unity: np.ndarray

    def __post_init__(self):
        gl.check_prime(self.p)
        mul = np.asarray(self.mul, dtype=np.int64)
        unity = np.asarray(self.unity, dtype=np.int64)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "unity", unity)
        d = unity.shape[0] if unity.ndim == 1 else -1
        if d < 1 or mul.shape != (d, d, d):
            raise ConstructionError(f"structure constants have shape {mul.shape}, unity {unity.shape}")
        if mul.min(initial=0) < 0 or mul.max(initial=0) >= self.p or unity.min() < 0 or unity.max() >= self.p:
            raise ConstructionError("structure constants must be residues mod p")
        mul.setflags(write=False)
        unity.setflags(write=False)
        eye = np.eye(d, dtype=np.int64)
        if not (np.array_equal(self.left_matrix(unity), eye) and np.array_equal(self.right_matrix(unity), eye)):
            raise ConstructionError("unity is not a two-sided identity")
        self._check_associative()

    def _check_associative(self) -> None:
        d, p, c = self.dim, self.p, self.mul
        flat = c.reshape(d, d * d)
        pairs = c.reshape(d * d, d)
        for i in range(d):
            # (e_i e_j) e_k  vs  e_i (e_j e_k)
            lhs = gl.matmul(c[i], flat, p).reshape(d, d, d)
            rhs = gl.matmul(pairs, c[i], p).reshape(d, d, d)
            if not np.array_equal(lhs, rhs):
                j, k, _ = np.argwhere(lhs != rhs)[0]
                raise ConstructionError(f"multiplication is not associative on basis triple ({i}, {j}, {k})")

    @property
    def dim(self) -> int:
        return self.unity.shape[0]

    def __repr__(self) -> str:
        return f"FiniteAlgebra(p={self.p}, dim={self.dim})"

    @cached_property
    def _flat(self) -> np.ndarray:
        return self.mul.reshape(self.dim, self.dim * self.dim)

    def product(self, x, y) -> np.ndarray:
        d = self.dim
        m = gl.matmul(np.asarray(x), self._flat, self.p).reshape(d, d)
        return gl.matmul(np.asarray(y), m, self.p)

    def products(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """All products ``xs[a] * ys[b]`` as an array of shape (a, b, dim)."""
        d = self.dim
        xs = np.asarray(xs).reshape(-1, d)
        ys = np.asarray(ys).reshape(-1, d)
        m = gl.matmul(xs, self._flat, self.p).reshape(-1, d, d)
        return np.stack([gl.matmul(ys, mi, self.p) for mi in m]) if len(m) else np.zeros((0, len(ys), d), np.int64)

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        d = self.dim
        return gl.matmul(np.asarray(x), self.mul.reshape(d, d * d), self.p).reshape(d, d).T.copy()

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of ``x -> x y``."""
        d = self.dim
        t = self.mul.transpose(1, 0, 2).reshape(d, d * d)
        return gl.matmul(np.asarray(y), t, self.p).reshape(d, d).T.copy()

    def power(self, x, n: int) -> np.ndarray:
        result = self.unity.copy()
        base = np.asarray(x, dtype=np.int64)
        while n:
            if n & 1:
                result = self.product(result, base)
            base = self.product(base, base)
            n >>= 1
        return result

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.transpose(1, 0, 2)))

    def inverse(self, x) -> np.ndarray | None:
        y = gl.solve(self.left_matrix(x), self.unity, self.p)
        if y is None or not np.array_equal(self.product(y, x), self.unity):
            return None
        return y

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def span(self, vectors) -> Subspace:
        return gl.echelon_basis(np.asarray(vectors, dtype=np.int64).reshape(-1, self.dim), self.p, self.dim)

    def span_product(self, u: Subspace, v: Subspace) -> Subspace:
        if not u.dim or not v.dim:
            return gl.zero_subspace(self.dim, self.p)
        return self.span(self.products(u.basis, v.basis).reshape(-1, self.dim))

    @cached_property
    def whole(self) -> Subspace:
        return gl.full_space(self.dim, self.p)


@dataclass(frozen=True, eq=False)
class Ideal:
    algebra: FiniteAlgebra
    space: Subspace

    def __post_init__(self):
        if not is_two_sided_ideal(self.algebra, self.space):
            raise ConstructionError("subspace is not a two-sided ideal")


@dataclass(frozen=True, eq=False)
class IdempotentSet:
    algebra: FiniteAlgebra
    idempotents: tuple[np.ndarray, ...]

    def __post_init__(self):
        b = self.algebra
        total = np.zeros(b.dim, dtype=np.int64)
        for i, e in enumerate(self.idempotents):
            if not np.array_equal(b.product(e, e), e):
                raise ConstructionError(f"element {i} is not idempotent")
            for j, f in enumerate(self.idempotents):
                if i != j and np.any(b.product(e, f)):
                    raise ConstructionError(f"idempotents {i} and {j} are not orthogonal")
            total = (total + e) % b.p
        if not np.array_equal(total, b.unity):
            raise ConstructionError("idempotents do not sum to the unit")

    def __len__(self) -> int:
        return len(self.idempotents)

    def __iter__(self):
        return iter(self.idempotents)

    def __getitem__(self, i):
        return self.idempotents[i]


class Quotient(NamedTuple):
    algebra: FiniteAlgebra
    projection: np.ndarray  # (dim Q, dim B): coordinates of the image of x are projection @ x
    lift: np.ndarray  # (dim B, dim Q): a linear section of the projection
    kernel: Subspace


class Locality(NamedTuple):
    local: bool
    residue_dim: int
    residue_commutative: bool
    residue: FiniteAlgebra


def is_two_sided_ideal(b: FiniteAlgebra, u: Subspace) -> bool:
    if not u.dim:
        return True
    basis = np.eye(b.dim, dtype=np.int64)
    left = b.products(basis, u.basis).reshape(-1, b.dim)
    right = b.products(u.basis, basis).reshape(-1, b.dim)
    return u.contains(left) and u.contains(right)


def nilpotency_index(b: FiniteAlgebra, u: Subspace) -> int | None:
    """Least k with ``u^k = 0``, or ``None`` if the powers stabilise above zero."""
    cur, k = u, 1
    while cur.dim:
        nxt = b.span_product(cur, u)
        if nxt == cur:
            return None
        cur, k = nxt, k + 1
    return k


def group_algebra(g: GroupTable, p: int) -> FiniteAlgebra:
    """GF(p)[G] with basis indexed by group elements."""
    n = g.order
    mul = np.zeros((n, n, n), dtype=np.int64)
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    mul[ii, jj, g.mul] = 1
    unity = np.zeros(n, dtype=np.int64)
    unity[0] = 1
    return FiniteAlgebra(p, mul, unity)


def subalgebra(b: FiniteAlgebra, w: Subspace, unity=None) -> FiniteAlgebra:
    """The algebra structure on ``w`` in its echelon coordinates.

    ``unity`` defaults to the unit of ``b``; pass an idempotent for a corner
    algebra ``e B e`` whose unit is ``e``.
    """
    if not w.dim:
        raise ConstructionError("subalgebra must be non-zero")
    prods = b.products(w.basis, w.basis).reshape(-1, b.dim)
    if not w.contains(prods):
        raise ConstructionError("subspace is not closed under multiplication")
    e = b.unity if unity is None else np.asarray(unity, dtype=np.int64)
    if not w.contains(e):
        raise ConstructionError("unit does not lie in the subspace")
    mul = w.coords(prods).reshape(w.dim, w.dim, w.dim)
    return FiniteAlgebra(b.p, mul, w.coords(e))


def quotient_by_ideal(b: FiniteAlgebra, ideal) -> Quotient:
    """``B / I`` on the complement of the pivot columns of ``I``."""
    space = ideal.space if isinstance(ideal, Ideal) else ideal
    if space.dim == b.dim:
        raise ConstructionError("cannot quotient by the whole algebra")
    if not is_two_sided_ideal(b, space):
        raise ConstructionError("subspace is not a two-sided ideal")
    comp = list(space.complement_indices())
    proj = space.reduce(np.eye(b.dim, dtype=np.int64))[:, comp].T.copy()
    lift = np.zeros((b.dim, len(comp)), dtype=np.int64)
    lift[comp, range(len(comp))] = 1
    q = len(comp)
    prods = b.mul[np.ix_(comp, comp)].reshape(q * q, b.dim)
    mul = gl.matmul(prods, proj.T, b.p).reshape(q, q, q)
    alg = FiniteAlgebra(b.p, mul, gl.matmul(proj, b.unity, b.p))
    return Quotient(alg, proj, lift, space)


def center(b: FiniteAlgebra) -> Subspace:
    """``Z(B)`` as the kernel of ``x -> x e_j - e_j x`` over all basis vectors."""
    d = b.dim
    # row block j: coefficient of e_k in (x e_j - e_j x) as a function of x
    blocks = [(b.mul[:, j, :] - b.mul[j, :, :]).T for j in range(d)]
    return gl.nullspace(np.concatenate(blocks) % b.p, b.p, d)


def frobenius_matrix(b: FiniteAlgebra) -> np.ndarray:
    """Matrix of ``x -> x^p``; linear only when ``b`` is commutative."""
    if not b.is_commutative:
        raise ValueError("the p-power map is only linear on commutative algebras")
    cols = [b.power(b.basis_vector(i), b.p) for i in range(b.dim)]
    return np.stack(cols, axis=1)


def _radical_commutative(b: FiniteAlgebra) -> Subspace:
    m = max(1, math.ceil(math.log(b.dim, b.p))) if b.dim > 1 else 1
    while b.p**m < b.dim:
        m += 1
    frob = frobenius_matrix(b)
    phi = np.eye(b.dim, dtype=np.int64)
    for _ in range(m):
        phi = gl.matmul(frob, phi, b.p)
    return gl.nullspace(phi, b.p, b.dim)


def _int_matpow_trace(m: np.ndarray, e: int, modulus: int) -> int:
    result = np.eye(m.shape[0], dtype=np.int64)
    base = m % modulus
    while e:
        if e & 1:
            result = (result @ base) % modulus
        base = (base @ base) % modulus
        e >>= 1
    return int(np.trace(result)) % modulus


def _radical_trace_form(b: FiniteAlgebra) -> Subspace:
    # Iterated kernels of the generalised trace forms of the left regular
    # representation, lifted to integers mod p^(i+1).
    p, d = b.p, b.dim
    top = 0
    while p ** (top + 1) <= d:
        top += 1
    cur = b.whole
    for i in range(top + 1):
        if not cur.dim:
            break
        modulus = p ** (i + 1)
        scale = p**i
        prods = b.products(cur.basis, np.eye(d, dtype=np.int64))
        g = np.zeros((cur.dim, d), dtype=np.int64)
        for s in range(cur.dim):
            for t in range(d):
                tr = _int_matpow_trace(b.left_matrix(prods[s, t]), p**i, modulus)
                if tr % scale:
                    raise AssertionError("trace form not divisible at radical step; algorithm invariant broken")
                g[s, t] = (tr // scale) % p
        ker = gl.nullspace(g.T, p, cur.dim)
        cur = gl.echelon_basis(gl.matmul(ker.basis, cur.basis, p), p, d) if ker.dim else gl.zero_subspace(d, p)
    return cur


def radical(b: FiniteAlgebra, *, verify: bool = True) -> Ideal:
    """Jacobson radical.

    Commutative algebras use the kernel of a high enough Frobenius iterate;
    otherwise the characteristic-p trace-form iteration is used.  The result
    is checked to be a nilpotent ideal with semisimple quotient.
    """
    space = _radical_commutative(b) if b.is_commutative else _radical_trace_form(b)
    if not is_two_sided_ideal(b, space):
        raise AssertionError("computed radical is not a two-sided ideal")
    if nilpotency_index(b, space) is None:
        raise AssertionError("computed radical is not nilpotent")
    if verify and space.dim:
        q = quotient_by_ideal(b, space)
        if radical(q.algebra, verify=False).space.dim:
            raise AssertionError("quotient by the computed radical is not semisimple")
    return Ideal(b, space)


def _split_semisimple_commutative(q: FiniteAlgebra) -> list[np.ndarray]:
    """Primitive idempotents of a commutative semisimple algebra.

    The Frobenius-fixed subalgebra is a product of copies of GF(p), one per
    simple factor; its basis elements separate the factors, and for each
    value ``lam`` the element ``1 - (f - lam)^(p-1)`` is the idempotent
    where ``f`` takes the value ``lam``.
    """
    p = q.p
    fixed = gl.nullspace((frobenius_matrix(q) - np.eye(q.dim, dtype=np.int64)) % p, p, q.dim)
    idems = [q.unity.copy()]
    for f in fixed.basis:
        refined = []
        for e in idems:
            for lam in range(p):
                shifted = (f - lam * q.unity) % p
                ind = (q.unity - q.power(shifted, p - 1)) % p
                piece = q.product(e, ind)
                if np.any(piece):
                    refined.append(piece)
        idems = refined
    if len(idems) != fixed.dim:
        raise AssertionError("idempotent splitting did not separate every simple factor")
    return idems


def lift_idempotent(b: FiniteAlgebra, e: np.ndarray, max_steps: int | None = None) -> np.ndarray:
    """Lift an idempotent modulo a nilpotent ideal by ``e <- 3e^2 - 2e^3``."""
    steps = max_steps if max_steps is not None else 2 * max(1, b.dim.bit_length()) + 2
    p = b.p
    for _ in range(steps):
        e2 = b.product(e, e)
        if np.array_equal(e2, e):
            return e
        e3 = b.product(e2, e)
        e = (3 * e2 - 2 * e3) % p
    raise AssertionError("idempotent lifting did not stabilise")


def central_primitive_idempotents(b: FiniteAlgebra) -> IdempotentSet:
    """Blocks of ``b``, sorted by coordinate vector in decreasing lexicographic order."""
    z = center(b)
    zalg = subalgebra(b, z)
    jz = radical(zalg).space
    if jz.dim:
        quo = quotient_by_ideal(zalg, jz)
        pieces = [lift_idempotent(zalg, gl.matmul(quo.lift, e, b.p)) for e in _split_semisimple_commutative(quo.algebra)]
    else:
        pieces = _split_semisimple_commutative(zalg)
    vecs = [gl.matmul(e, z.basis, b.p) for e in pieces]
    vecs.sort(key=lambda v: tuple(v.tolist()), reverse=True)
    idem = IdempotentSet(b, tuple(vecs))
    basis = np.eye(b.dim, dtype=np.int64)
    for i, e in enumerate(idem):
        if not np.array_equal(b.products(e, basis), b.products(basis, e).transpose(1, 0, 2)):
            raise AssertionError(f"block {i} is not central")
    return idem


def is_local(b: FiniteAlgebra) -> Locality:
    """Whether ``B/J(B)`` is a division ring (necessarily a finite field)."""
    jac = radical(b).space
    residue = quotient_by_ideal(b, jac).algebra if jac.dim else b
    comm = residue.is_commutative
    if comm:
        local = len(_split_semisimple_commutative(residue)) == 1
    else:
        # a noncommutative semisimple algebra over a finite field is never a division ring
        local = False
    return Locality(local, residue.dim, comm, residue)


def find_unit_in_subspace(
    b: FiniteAlgebra,
    u: Subspace,
    v: Subspace,
    seed: int = 0,
    attempts: int = UNIT_SEARCH_ATTEMPTS,
    exhaustive_cap: int = UNIT_EXHAUSTIVE_CAP,
) -> tuple[np.ndarray, np.ndarray] | None:
    """Find ``x`` in ``u`` and ``y`` in ``v`` with ``xy = yx = 1``.

    Random sampling of ``u`` first, then exhaustive enumeration when
    ``p**dim(u)`` is at most ``exhaustive_cap``.
    """
    if not u.dim or not v.dim:
        return None
    p = b.p

    def attempt(coeffs):
        x = gl.matmul(np.asarray(coeffs, dtype=np.int64), u.basis, p)
        # x * (c . V) = 1
        lhs = gl.matmul(b.left_matrix(x), v.basis.T, p)
        c = gl.solve(lhs, b.unity, p)
        if c is None:
            return None
        y = gl.matmul(c, v.basis, p)
        if np.array_equal(b.product(y, x), b.unity):
            return x, y
        return None

    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        coeffs = rng.integers(0, p, size=u.dim)
        if not coeffs.any():
            continue
        hit = attempt(coeffs)
        if hit is not None:
            return hit
    if p**u.dim <= exhaustive_cap:
        for coeffs in itertools.product(range(p), repeat=u.dim):
            if any(coeffs):
                hit = attempt(coeffs)
                if hit is not None:
                    return hit
        return None
    log.warning("unit search gave up: %d random attempts, space of size %d^%d over the exhaustive cap", attempts, p, u.dim)
    return None


def from_json(data: dict) -> FiniteAlgebra:
    """Algebra from ``{"p": .., "dim": .., "unity": [..], "mul": [[[..]]]}``."""
    try:
        p = int(data["p"])
        d = int(data["dim"])
        mul = np.asarray(data["mul"], dtype=np.int64)
        unity = np.asarray(data["unity"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConstructionError(f"malformed algebra description: {exc}") from None
    if mul.shape != (d, d, d) or unity.shape != (d,):
        raise ConstructionError(f"algebra of dim {d} needs mul of shape {(d, d, d)} and unity of length {d}")
    return FiniteAlgebra(p, mul % p, unity % p)
