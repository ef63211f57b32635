"""Exact linear algebra over a prime field GF(p).

Vectors and matrices are plain numpy ``int64`` arrays holding residues in
``[0, p)``.  Subspaces are stored through their reduced row-echelon basis,
which is canonical, so two subspaces are equal exactly when their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime

# float64 matmul is exact while every partial sum stays below 2**53.
_FLOAT_EXACT = 2**52


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or p < 2 or not isprime(int(p)):
        raise ValueError(f"modulus {p!r} is not prime")
    return int(p)


def as_mod(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p``, routed through BLAS when the result is provably exact."""
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.mod(np.rint(out).astype(np.int64), p)
    return np.mod(np.asarray(a, dtype=object) @ np.asarray(b, dtype=object), p).astype(np.int64)


def rref(m: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form of ``m`` over GF(p).

    Pivots are only searched in the first ``ncols`` columns (all by default);
    row operations always act on the full width, which is what ``solve``
    needs for an augmented system.  Zero rows are dropped.
    """
    r = as_mod(m, p).copy()
    if r.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = r.shape
    limit = cols if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(limit):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            r[[row, k]] = r[[k, row]]
        r[row] = (r[row] * pow(int(r[row, col]), -1, p)) % p
        factors = r[:, col].copy()
        factors[row] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            r[hit] = (r[hit] - np.outer(factors[hit], r[row])) % p
        pivots.append(col)
        row += 1
    return r[:row].copy(), tuple(pivots)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^n given by its canonical reduced echelon basis."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    def __post_init__(self):
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, dim={self.dim}/{self.ambient_dim})"

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of ``x`` in the echelon basis (``x`` must lie in the space)."""
        x = np.asarray(x)
        if x.ndim == 1:
            return x[list(self.pivots)].copy()
        return x[..., list(self.pivots)].copy()

    def contains(self, x: np.ndarray) -> bool:
        x = as_mod(x, self.p)
        if x.ndim == 1:
            x = x[None, :]
        recon = matmul(x[:, list(self.pivots)], self.basis, self.p) if self.dim else np.zeros_like(x)
        return bool(np.array_equal(recon, x))

    def reduce(self, x: np.ndarray) -> np.ndarray:
        """Representative of ``x`` modulo this subspace, zero on the pivot columns."""
        x = as_mod(x, self.p)
        if not self.dim:
            return x
        return (x - matmul(x[..., list(self.pivots)], self.basis, self.p)) % self.p

    def complement_indices(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)


def zero_subspace(n: int, p: int) -> Subspace:
    return Subspace(p, n, np.zeros((0, n), dtype=np.int64), ())


def full_space(n: int, p: int) -> Subspace:
    return Subspace(p, n, np.eye(n, dtype=np.int64), tuple(range(n)))


def echelon_basis(vectors, p: int, ambient_dim: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``vectors``."""
    check_prime(p)
    if isinstance(vectors, np.ndarray):
        m = vectors
        if m.ndim == 1:
            m = m[None, :]
    else:
        vectors = list(vectors)
        if not vectors:
            if ambient_dim is None:
                raise ValueError("ambient_dim is required for an empty spanning set")
            return zero_subspace(ambient_dim, p)
        lengths = {len(v) for v in vectors}
        if len(lengths) != 1:
            raise ValueError("ragged input: vectors have different lengths")
        m = np.array([list(v) for v in vectors], dtype=np.int64)
    n = m.shape[1] if ambient_dim is None else ambient_dim
    if m.shape[1] != n:
        raise ValueError(f"vectors have length {m.shape[1]}, expected {n}")
    if m.shape[0] == 0:
        return zero_subspace(n, p)
    r, piv = rref(m, p)
    return Subspace(p, n, r, piv)


def nullspace(m: np.ndarray, p: int, ncols: int | None = None) -> Subspace:
    """Right kernel ``{x : m x = 0}``."""
    m = as_mod(m, p)
    n = m.shape[1] if m.ndim == 2 and m.shape[0] else (ncols if ncols is not None else m.shape[-1])
    if m.ndim != 2 or m.shape[0] == 0:
        return full_space(n, p)
    r, piv = rref(m, p)
    free = [j for j in range(n) if j not in set(piv)]
    if not free:
        return zero_subspace(n, p)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, j in enumerate(free):
        basis[row, j] = 1
        for i, pc in enumerate(piv):
            basis[row, pc] = (-r[i, j]) % p
    return echelon_basis(basis, p, n)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``x`` with ``a x = b`` (free variables zero), or ``None``."""
    a = as_mod(a, p)
    b = as_mod(b, p)
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A is {a.shape}, b has shape {b.shape}")
    n = a.shape[1]
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, piv = rref(aug, p)
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, col in enumerate(piv):
        x[col] = r[i, n]
    return x


def rank(m: np.ndarray, p: int) -> int:
    m = as_mod(m, p)
    if m.ndim != 2 or m.size == 0:
        return 0
    return len(rref(m, p)[1])


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of a square matrix over GF(p), or ``None`` if singular."""
    m = as_mod(m, p)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    r, piv = rref(np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1), p, ncols=n)
    if piv != tuple(range(n)):
        return None
    return r[:, n:].copy()


def _check_pair(u: Subspace, v: Subspace) -> None:
    if u.p != v.p or u.ambient_dim != v.ambient_dim:
        raise ValueError(
            f"mismatched ambient spaces: GF({u.p})^{u.ambient_dim} vs GF({v.p})^{v.ambient_dim}"
        )


def span_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_pair(u, v)
    return echelon_basis(np.concatenate([u.basis, v.basis]), u.p, u.ambient_dim)


def span_intersection(u: Subspace, v: Subspace) -> Subspace:
    _check_pair(u, v)
    if not u.dim or not v.dim:
        return zero_subspace(u.ambient_dim, u.p)
    # a.U = c.V  <=>  [a | -c] [U; V] = 0
    stacked = np.concatenate([u.basis, (-v.basis) % u.p]).T
    ker = nullspace(stacked, u.p)
    if not ker.dim:
        return zero_subspace(u.ambient_dim, u.p)
    return echelon_basis(matmul(ker.basis[:, : u.dim], u.basis, u.p), u.p, u.ambient_dim)


def span_contains(u: Subspace, v: Subspace) -> bool:
    """True when ``v`` is contained in ``u``."""
    _check_pair(u, v)
    return u.contains(v.basis) if v.dim else True


def span_combine(u: Subspace, v: Subspace, mode: str):
    """Sum, intersection, equality or containment (``v`` inside ``u``) of subspaces."""
    if mode == "sum":
        return span_sum(u, v)
    if mode == "intersect":
        return span_intersection(u, v)
    if mode == "equal":
        _check_pair(u, v)
        return u == v
    if mode == "contains":
        return span_contains(u, v)
    raise ValueError(f"unknown mode {mode!r}")


def image(m: np.ndarray, u: Subspace, out_dim: int | None = None) -> Subspace:
    """Image of the subspace ``u`` under the matrix ``m`` (acting on column vectors)."""
    n = m.shape[0] if out_dim is None else out_dim
    if not u.dim:
        return zero_subspace(n, u.p)
    return echelon_basis(matmul(u.basis, m.T, u.p), u.p, n)
