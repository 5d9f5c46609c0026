"""
Dense matrices, permutations and circulants over GF(2^l).

Matrices are 2-D ``numpy`` integer arrays holding field elements; the owning
:class:`~qcniederreiter.field.FieldSpec` is passed explicitly. A permutation
is a 1-D integer array of images: ``perm[i]`` is where position ``i`` goes.
Singular inputs are reported by returning ``None`` rather than raising, since
callers (key generation, ISD) routinely retry on them.
"""

from __future__ import annotations

import numpy as np

from .field import DTYPE, FieldSpec


def as_matrix(data) -> np.ndarray:
    return np.array(data, dtype=DTYPE, ndmin=2)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def circulant_expand(first_row) -> np.ndarray:
    """Circulant whose row ``r`` is the first row rotated right ``r`` times.

    Entry ``(r, j)`` equals ``first_row[(j - r) mod p]``.
    """
    c = np.asarray(first_row, dtype=DTYPE)
    p = len(c)
    idx = (np.arange(p)[None, :] - np.arange(p)[:, None]) % p
    return c[idx]


def mat_mul(gf: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=DTYPE)
    # outer-product accumulation keeps every step a whole-array table lookup
    for k in range(a.shape[1]):
        col = a[:, k]
        if not col.any():
            continue
        out ^= gf.mul(col[:, None], b[k][None, :])
    return out[:, 0] if vec else out


def _eliminate(gf: FieldSpec, m: np.ndarray, ncols: int):
    """Reduced row echelon form of ``m`` in place over its first ``ncols`` columns.

    Pivot choice: leftmost column with a nonzero entry, topmost such row.
    Returns the list of pivot columns.
    """
    rows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = gf.mul(m[r], gf.inv(int(m[r, c])))
        factors = m[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            m[hit] ^= gf.mul(factors[hit][:, None], m[r][None, :])
        pivots.append(c)
        r += 1
    return pivots


def rref(gf: FieldSpec, a):
    """Return ``(R, pivots)``, the reduced row echelon form and pivot columns."""
    m = np.array(a, dtype=DTYPE)
    pivots = _eliminate(gf, m, m.shape[1])
    return m, pivots


def rank(gf: FieldSpec, a) -> int:
    return len(rref(gf, a)[1])


def mat_inverse(gf: FieldSpec, a):
    """Inverse of a square matrix, or ``None`` if singular."""
    a = np.asarray(a, dtype=DTYPE)
    n, ncols = a.shape
    if n != ncols:
        raise ValueError(f"matrix must be square, got {a.shape}")
    aug = np.concatenate([a, identity(n)], axis=1)
    pivots = _eliminate(gf, aug, n)
    if len(pivots) < n:
        return None
    return aug[:, n:].copy()


def gauss_solve(gf: FieldSpec, a, y):
    """Some ``z`` with ``a @ z = y``, free variables set to zero; ``None`` if inconsistent."""
    a = np.asarray(a, dtype=DTYPE)
    y = np.asarray(y, dtype=DTYPE)
    rows, cols = a.shape
    aug = np.concatenate([a, y[:, None]], axis=1)
    pivots = _eliminate(gf, aug, cols)
    if aug[len(pivots):, cols].any():
        return None
    z = np.zeros(cols, dtype=DTYPE)
    for r, c in enumerate(pivots):
        z[c] = aug[r, cols]
    return z


def random_matrix(gf: FieldSpec, rows: int, cols: int, rng: np.random.Generator, binary=False):
    hi = 2 if binary else gf.order
    return rng.integers(0, hi, size=(rows, cols), dtype=DTYPE)


def random_invertible(p: int, gf: FieldSpec, rng: np.random.Generator, binary=False):
    """Uniform invertible ``p x p`` matrix by rejection sampling.

    With ``binary=True`` the entries are restricted to GF(2).
    Returns ``(A, A^-1)``.
    """
    while True:
        a = random_matrix(gf, p, p, rng, binary=binary)
        inv = mat_inverse(gf, a)
        if inv is not None:
            return a, inv


# -- permutations -------------------------------------------------------------

def identity_perm(n: int) -> np.ndarray:
    return np.arange(n, dtype=DTYPE)


def random_perm(n: int, rng: np.random.Generator) -> np.ndarray:
    # Generator.permutation is a Fisher-Yates shuffle
    return rng.permutation(n).astype(DTYPE)


def is_perm(perm) -> bool:
    perm = np.asarray(perm)
    return perm.ndim == 1 and np.array_equal(np.sort(perm), np.arange(len(perm)))


def perm_inverse(perm) -> np.ndarray:
    perm = np.asarray(perm, dtype=DTYPE)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm), dtype=DTYPE)
    return inv


def perm_compose(first, then) -> np.ndarray:
    """Permutation applying ``first`` and then ``then``."""
    return np.asarray(then, dtype=DTYPE)[np.asarray(first, dtype=DTYPE)]


def apply_perm_cols(a, perm) -> np.ndarray:
    """Move column ``j`` of ``a`` to position ``perm[j]`` (right-multiplication by a permutation matrix)."""
    a = np.asarray(a)
    out = np.empty_like(a)
    out[:, perm] = a
    return out


def apply_perm_rows(a, perm) -> np.ndarray:
    """Move row ``i`` of ``a`` to position ``perm[i]``."""
    a = np.asarray(a)
    out = np.empty_like(a)
    out[perm] = a
    return out


def perm_matrix(perm) -> np.ndarray:
    """Matrix ``P`` with ``A @ P == apply_perm_cols(A, perm)``."""
    n = len(perm)
    m = np.zeros((n, n), dtype=DTYPE)
    m[np.arange(n), perm] = 1
    return m
