"""Dense linear algebra over GF(2).

Matrices are plain ``numpy`` arrays of ``uint8`` holding 0/1 entries.
Every function returns fresh arrays and never mutates its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_gf2(a) -> np.ndarray:
    """Coerce ``a`` to a uint8 array reduced mod 2."""
    arr = np.asarray(a)
    if arr.dtype == np.uint8:
        return arr & 1
    return (arr.astype(np.int64) % 2).astype(np.uint8)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return ((a @ b) & 1).astype(np.uint8)


@dataclass(frozen=True)
class RowReduction:
    rref: np.ndarray
    rank: int
    pivots: tuple[int, ...]


def row_reduce(m) -> RowReduction:
    """Reduced row-echelon form with leftmost-pivot tie breaking."""
    a = as_gf2(m).copy()
    if a.ndim != 2:
        raise ValueError("expected a 2D matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        hit = np.flatnonzero(a[:, c])
        hit = hit[hit != r]
        if hit.size:
            a[hit] ^= a[r]
        pivots.append(c)
        r += 1
    return RowReduction(a, r, tuple(pivots))


def rank(m) -> int:
    return row_reduce(m).rank


def row_basis(m) -> np.ndarray:
    """The nonzero rows of the rref of ``m``."""
    red = row_reduce(m)
    return red.rref[: red.rank]


def kernel(m) -> np.ndarray:
    """Basis (as rows) of the right nullspace ``{v : m v = 0}``."""
    a = as_gf2(m)
    rows, cols = a.shape
    red = row_reduce(a)
    free = [c for c in range(cols) if c not in set(red.pivots)]
    basis = zeros(len(free), cols)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(red.pivots):
            basis[i, p] = red.rref[r, f]
    return basis


def solve(m, b) -> np.ndarray | None:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero, so the answer is canonical for the rref.
    """
    a = as_gf2(m)
    rhs = as_gf2(b).reshape(-1)
    rows, cols = a.shape
    if rhs.size != rows:
        raise ValueError(f"right-hand side has length {rhs.size}, expected {rows}")
    aug = np.concatenate([a, rhs[:, None]], axis=1)
    red = row_reduce(aug)
    if red.pivots and red.pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for r, p in enumerate(red.pivots):
        x[p] = red.rref[r, cols]
    return x


def solve_matrix(m, b) -> np.ndarray | None:
    """Solve ``m X = b`` column by column; ``None`` if any column fails."""
    b = as_gf2(b)
    cols = []
    for j in range(b.shape[1]):
        x = solve(m, b[:, j])
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return zeros(as_gf2(m).shape[1], 0)
    return np.stack(cols, axis=1)


def inverse(m) -> np.ndarray:
    a = as_gf2(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix is not square")
    red = row_reduce(np.concatenate([a, identity(n)], axis=1))
    if red.rank < n or red.pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return red.rref[:, n:].copy()


def in_rowspan(basis_rref: RowReduction, v) -> bool:
    """Membership of ``v`` in the row space of an already reduced matrix."""
    v = as_gf2(v).copy()
    for r, p in enumerate(basis_rref.pivots):
        if v[p]:
            v ^= basis_rref.rref[r]
    return not v.any()


def same_rowspan(a, b) -> bool:
    ra, rb = row_reduce(a), row_reduce(b)
    return ra.rank == rb.rank and np.array_equal(ra.rref[: ra.rank], rb.rref[: rb.rank])


def to_text(m) -> str:
    a = as_gf2(m)
    return "\n".join("".join("1" if x else "0" for x in row) for row in a)


def from_text(text: str, cols: int | None = None) -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        return zeros(0, cols or 0)
    width = len(lines[0])
    out = zeros(len(lines), width)
    for i, ln in enumerate(lines):
        if len(ln) != width or set(ln) - {"0", "1"}:
            raise ValueError(f"bad matrix row {i}: {ln!r}")
        out[i] = [c == "1" for c in ln]
    return out
