"""Exact dense linear algebra over the prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are residues in
``[0, p)``; the modulus travels alongside as an explicit argument. Vectors
are 1-d arrays. Row reduction picks the first nonzero entry of each column
as pivot, so every result is reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class MalformedInputError(ValueError):
    """Raised for ragged, non-integral or wrongly-sized input."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_modulus(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise MalformedInputError(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if p < 3 or not is_prime(p):
        raise MalformedInputError(f"modulus must be an odd prime, got {p}")
    return p


def inv(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def as_matrix(rows, p: int, cols: int | None = None) -> np.ndarray:
    """Coerce ``rows`` to a reduced int64 matrix.

    ``cols`` fixes the column count for an empty row list.
    """
    if isinstance(rows, np.ndarray):
        arr = rows
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else np.zeros((0, cols or 0), dtype=np.int64)
    else:
        rows = [list(r) for r in rows]
        if not rows:
            return np.zeros((0, cols or 0), dtype=np.int64)
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise MalformedInputError(f"ragged rows with widths {sorted(widths)}")
        arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise MalformedInputError(f"expected a 2-d matrix, got shape {arr.shape}")
    if cols is not None and arr.shape[1] != cols:
        raise MalformedInputError(f"expected {cols} columns, got {arr.shape[1]}")
    if arr.dtype.kind not in "iu":
        for x in arr.flat:
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise MalformedInputError(f"non-integer entry {x!r}")
        arr = np.array([[int(x) % p for x in row] for row in arr], dtype=np.int64).reshape(arr.shape)
    return np.asarray(arr, dtype=np.int64) % p


def as_rows(vectors, cols: int) -> np.ndarray:
    """View ``vectors`` as a (k, cols) int64 matrix; tolerates k = 0 and cols = 0."""
    arr = np.asarray(vectors, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, cols), dtype=np.int64)
    return arr.reshape(-1, cols)


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` and its pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * inv(A[r, c], p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: np.ndarray, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def normalize(v: np.ndarray, p: int) -> np.ndarray:
    """Scale ``v`` so its first nonzero entry is 1."""
    nz = np.nonzero(v % p)[0]
    if nz.size == 0:
        return v % p
    return (v * inv(v[nz[0]], p)) % p


def kernel_basis(M: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` as the rows of the returned matrix.

    One vector per free column, free columns ascending, each normalized to
    leading coefficient 1.
    """
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(M, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for r, pc in enumerate(pivots):
            K[t, pc] = (-R[r, f]) % p
        K[t] = normalize(K[t], p)
    return K


def solve(M: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``M x = b`` (free variables zero), or None."""
    M = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = M.shape
    if b.shape[0] != rows:
        raise MalformedInputError(f"rhs has length {b.shape[0]}, expected {rows}")
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    R, pivots = rref(np.hstack([M, b.reshape(-1, 1)]), p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, cols]
    return x


def row_basis(vectors, p: int, dim: int | None = None) -> np.ndarray:
    """Echelon basis (nonzero RREF rows) of the span of ``vectors``."""
    A = as_matrix(vectors, p, dim)
    if A.shape[0] == 0:
        return A
    R, pivots = rref(A, p)
    return R[: len(pivots)]


def in_span(v: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    vectors = np.asarray(vectors, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64) % p
    if vectors.shape[0] == 0:
        return not v.any()
    return rank(np.vstack([vectors, v]), p) == rank(vectors, p)


def coordinates(v: np.ndarray, basis: np.ndarray, p: int) -> np.ndarray | None:
    """Coefficients expressing ``v`` in the rows of ``basis`` (None if outside the span)."""
    basis = as_rows(basis, len(v))
    return solve(basis.T, v, p)


def quotient_basis(sub, ambient_dim: int, p: int) -> np.ndarray:
    """Standard vectors completing an echelon basis of span(sub) to F_p^ambient_dim."""
    A = as_matrix(sub, p, ambient_dim)
    if A.shape[0] and A.shape[1] != ambient_dim:
        raise MalformedInputError(f"vectors have length {A.shape[1]}, expected {ambient_dim}")
    pivots = set(rref(A, p)[1]) if A.shape[0] else set()
    free = [c for c in range(ambient_dim) if c not in pivots]
    Q = np.zeros((len(free), ambient_dim), dtype=np.int64)
    for t, c in enumerate(free):
        Q[t, c] = 1
    return Q


def complement_basis(sub: np.ndarray, candidates: Iterable[np.ndarray], p: int, dim: int) -> np.ndarray:
    """Greedily pick candidates that are independent modulo span(sub).

    Returns the chosen candidates (normalized) in the order encountered.
    """
    current = row_basis(sub, p, dim)
    r = current.shape[0]
    chosen = []
    for v in candidates:
        v = np.asarray(v, dtype=np.int64) % p
        trial = np.vstack([current, v]) if current.shape[0] else v.reshape(1, -1)
        if rank(trial, p) > r:
            chosen.append(normalize(v, p))
            current = trial
            r += 1
    if not chosen:
        return np.zeros((0, dim), dtype=np.int64)
    return np.array(chosen, dtype=np.int64)


def class_coordinates(v: np.ndarray, reps: np.ndarray, sub: np.ndarray, p: int) -> np.ndarray | None:
    """Coordinates of the class of ``v`` modulo span(sub) in the basis ``reps``.

    None when ``v`` is not in span(reps) + span(sub).
    """
    reps = as_rows(reps, len(v))
    sub = as_rows(sub, len(v))
    x = coordinates(v, np.vstack([reps, sub]), p)
    if x is None:
        return None
    return x[: reps.shape[0]]


def stack(blocks: Sequence[np.ndarray], cols: int) -> np.ndarray:
    blocks = [as_rows(b, cols) for b in blocks]
    return np.vstack(blocks) if blocks else np.zeros((0, cols), dtype=np.int64)


def matpow(M: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(M.shape[0], dtype=np.int64)
    base = M % p
    while k:
        if k & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        k >>= 1
    return out
