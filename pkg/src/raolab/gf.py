"""Dense linear algebra over a prime field GF(p).

Matrices are small (at most a few hundred rows/columns at the scales used
here), so everything is plain row reduction on int64 numpy arrays.  Entries
stay in ``[0, p)``; products of two entries fit in int64 for any p < 2**31.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

DEFAULT_PRIME = 32003
SECOND_PRIME = 65537


class DimensionMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p >= 2**31 or not is_prime(self.p):
            raise ValueError(f"p={self.p} is not a prime below 2**31")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return pow(a, self.p - 2, self.p)

    def reduce(self, a: int) -> int:
        return a % self.p

    @classmethod
    def from_env(cls) -> "FieldSpec":
        return cls(int(os.environ.get("RAOLAB_PRIME", DEFAULT_PRIME)))


@dataclass(frozen=True)
class FieldMatrix:
    """Immutable dense matrix over GF(p), row-major."""

    rows: int
    cols: int
    entries: tuple
    field: FieldSpec = field(default_factory=FieldSpec)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entries length must equal rows*cols")

    @classmethod
    def from_array(cls, a, fs: FieldSpec | None = None) -> "FieldMatrix":
        fs = fs or FieldSpec()
        a = np.asarray(a, dtype=np.int64)
        if a.ndim != 2:
            a = a.reshape(a.shape[0] if a.size else 0, -1)
        a = a % fs.p
        return cls(a.shape[0], a.shape[1], tuple(int(x) for x in a.ravel()), fs)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix.from_array(self.to_array().T, self.field)


# --- array-level kernels ---------------------------------------------------


def _as_mod(a, p: int) -> np.ndarray:
    a = np.array(a, dtype=np.int64, copy=True)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    a %= p
    return a


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod p.

    Returns the nonzero rows of the RREF and the pivot column list.  The
    input is not modified.
    """
    a = _as_mod(a, p)
    nrows, ncols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_array(a, p: int) -> int:
    """Rank mod p by forward elimination on a private copy."""
    a = _as_mod(a, p)
    nrows, ncols = a.shape
    if nrows == 0 or ncols == 0:
        return 0
    if ncols < nrows:
        a = np.ascontiguousarray(a.T)
        nrows, ncols = ncols, nrows
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        hit = np.flatnonzero(below)
        if hit.size:
            rows = hit + r + 1
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:])) % p
        r += 1
    return r


def nullspace(a, p: int) -> np.ndarray:
    """Basis of the right kernel {x : a x = 0}, one basis vector per row."""
    a = _as_mod(a, p)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-red[j, f]) % p
    return basis


def left_nullspace(a, p: int) -> np.ndarray:
    """Rows y with y a = 0 (functionals vanishing on the column space)."""
    a = _as_mod(a, p)
    return nullspace(a.T, p)


def row_space(a, p: int) -> np.ndarray:
    """A basis (rows, in RREF) of the row space."""
    red, _ = rref(a, p)
    return red


def column_basis(a, p: int) -> np.ndarray:
    """Basis of the column space, returned as columns."""
    return row_space(np.asarray(a).T, p).T


# --- public operations -----------------------------------------------------


def _arr(m, p):
    if isinstance(m, FieldMatrix):
        return m.to_array(), m.field.p
    return np.asarray(m, dtype=np.int64), p


def rank(m: FieldMatrix | np.ndarray, p: int | None = None) -> int:
    """Rank of ``m``; accepts a FieldMatrix or a raw array plus ``p``."""
    a, p = _arr(m, p)
    if a.size == 0:
        return 0
    return rank_array(a, p)


def kernel_dimension(m: FieldMatrix | np.ndarray, p: int | None = None) -> int:
    a, p = _arr(m, p)
    cols = a.shape[1] if a.ndim == 2 else 0
    return cols - rank(a, p)


def image_sum_dimension(a: FieldMatrix | np.ndarray, b: FieldMatrix | np.ndarray,
                        p: int | None = None) -> int:
    """dim(im A + im B) = rank [A | B]."""
    a, p1 = _arr(a, p)
    b, p2 = _arr(b, p)
    if p1 is None or p2 is None:
        p1 = p2 = p1 or p2
    if p1 != p2:
        raise DimensionMismatch("matrices over different fields")
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"row counts differ: {a.shape[0]} vs {b.shape[0]}")
    return rank(np.hstack([a.reshape(a.shape[0], -1), b.reshape(b.shape[0], -1)]), p1)


def random_matrix(rows: int, cols: int, p: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)
