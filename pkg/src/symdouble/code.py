"""Qubit stabilizer codes given by an isotropic check matrix ``(H_X | H_Z)``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import gf2
from .pauli import (
    SymplecticVector,
    matrix_to_paulis,
    omega,
    pairing_matrix,
    pauli_render,
    pauli_weight,
    paulis_to_matrix,
    signed_product,
)


class IsotropyError(ValueError):
    """Raised when two check rows anticommute."""


@dataclass(frozen=True)
class DistanceBound:
    """Result of a distance search that found nothing up to ``max_weight``."""

    max_weight: int

    def __str__(self) -> str:
        return f"> {self.max_weight}"


def _independent_rows(m: np.ndarray) -> np.ndarray:
    """Greedy subset of rows (in order) spanning the row space of ``m``."""
    keep = []
    basis = np.zeros((0, m.shape[1]), dtype=np.uint8)
    r = 0
    for i, row in enumerate(m):
        trial = np.vstack([basis, row[None, :]])
        rk = gf2.rank(trial)
        if rk > r:
            basis, r = trial, rk
            keep.append(i)
    return m[keep]


class StabilizerCode:
    """An [[n, k]] stabilizer code.

    ``checks`` is reduced to an independent subset of the supplied rows, so
    redundant generators are accepted and absorbed.
    """

    def __init__(self, checks, n: int | None = None):
        h = gf2.as_gf2(checks)
        if h.ndim == 1:
            h = h.reshape(0, 2 * (n or 0)) if h.size == 0 else h[None, :]
        if n is None:
            n = h.shape[1] // 2
        if h.shape[1] != 2 * n:
            raise ValueError(f"check matrix has {h.shape[1]} columns, expected {2 * n}")
        gram = pairing_matrix(h, h)
        bad = np.argwhere(np.triu(gram))
        if bad.size:
            i, j = bad[0]
            raise IsotropyError(
                f"check rows {i} ({pauli_render(h[i])}) and {j} ({pauli_render(h[j])}) anticommute"
            )
        h = _independent_rows(h)
        h.setflags(write=False)
        self.n = n
        self.checks = h

    @classmethod
    def from_paulis(cls, rows, n: int | None = None) -> "StabilizerCode":
        return cls(paulis_to_matrix(rows, n), n)

    @property
    def m(self) -> int:
        return self.checks.shape[0]

    @property
    def k(self) -> int:
        return self.n - self.m

    @property
    def hx(self) -> np.ndarray:
        return self.checks[:, : self.n]

    @property
    def hz(self) -> np.ndarray:
        return self.checks[:, self.n :]

    @cached_property
    def stabilizer_rref(self) -> gf2.RowReduction:
        return gf2.row_reduce(self.checks)

    @cached_property
    def normalizer(self) -> np.ndarray:
        """Basis of C^perp, the vectors commuting with every check."""
        return gf2.kernel(gf2.matmul(self.checks, omega(self.n)))

    def contains(self, v) -> bool:
        """Is ``v`` in the stabilizer space C?"""
        bits = v.bits if isinstance(v, SymplecticVector) else v
        return gf2.in_rowspan(self.stabilizer_rref, bits)

    def commutes(self, v) -> bool:
        """Is ``v`` in C^perp?"""
        bits = v.bits if isinstance(v, SymplecticVector) else gf2.as_gf2(v)
        return not pairing_matrix(self.checks, bits[None, :]).any()

    def signed_member(self, bits, sign: int = 0) -> bool:
        """Is ``(-1)^sign P(bits)`` in the stabilizer group (all checks signed +)?"""
        bits = gf2.as_gf2(bits).reshape(-1)
        coeff = gf2.solve(self.checks.T, bits)
        if coeff is None:
            return False
        _, s = signed_product(self.checks[coeff.astype(bool)])
        return s == int(sign)

    def syndrome(self, v) -> np.ndarray:
        bits = v.bits if isinstance(v, SymplecticVector) else gf2.as_gf2(v)
        return pairing_matrix(self.checks, bits[None, :])[:, 0]

    @cached_property
    def logical_basis(self) -> list[SymplecticVector]:
        return logical_basis(self)

    @cached_property
    def logical_matrix(self) -> np.ndarray:
        """Logicals as rows ordered X1, Z1, X2, Z2, ..."""
        if not self.logical_basis:
            return np.zeros((0, 2 * self.n), dtype=np.uint8)
        return np.stack([v.bits for v in self.logical_basis])

    def paulis(self, identity: str = "I") -> list[str]:
        return matrix_to_paulis(self.checks, identity)

    def same_space(self, other: "StabilizerCode") -> bool:
        return self.n == other.n and gf2.same_rowspan(self.checks, other.checks)

    def permuted(self, perm) -> "StabilizerCode":
        """Move qubit ``i`` to position ``perm[i]``."""
        return StabilizerCode(permute_columns(self.checks, perm), self.n)

    def __repr__(self) -> str:
        return f"StabilizerCode(n={self.n}, k={self.k}, checks={self.paulis()})"


def permute_columns(h: np.ndarray, perm) -> np.ndarray:
    """Apply a qubit permutation (qubit i goes to perm[i]) to (X | Z) rows."""
    perm = np.asarray(perm, dtype=int)
    n = perm.size
    out = np.zeros_like(h)
    out[:, perm] = h[:, :n]
    out[:, n + perm] = h[:, n:]
    return out


def code_from_paulis(rows, n: int | None = None) -> StabilizerCode:
    return StabilizerCode.from_paulis(rows, n)


def logical_basis(c: StabilizerCode) -> list[SymplecticVector]:
    """Symplectic basis ``[X1, Z1, X2, Z2, ...]`` of C^perp / C.

    Candidates are the rows of the rref of C^perp, taken in order and kept
    when independent of C and of those already kept; a symplectic
    Gram-Schmidt pass then pairs them up. The result is deterministic.
    """
    cands = gf2.row_reduce(c.normalizer).rref
    span = c.checks.copy()
    r = gf2.rank(span) if span.size else 0
    chosen = []
    for v in cands:
        if len(chosen) == 2 * c.k:
            break
        trial = np.vstack([span, v[None, :]])
        rk = gf2.rank(trial)
        if rk > r:
            span, r = trial, rk
            chosen.append(v.copy())
    pool = chosen
    out = []
    while pool:
        u = pool.pop(0)
        partner = next(
            (j for j, w in enumerate(pool) if pairing_matrix(u[None, :], w[None, :])[0, 0]),
            None,
        )
        if partner is None:
            raise RuntimeError("logical candidates are degenerate")
        w = pool.pop(partner)
        rest = []
        for v in pool:
            if pairing_matrix(v[None, :], w[None, :])[0, 0]:
                v = v ^ u
            if pairing_matrix(v[None, :], u[None, :])[0, 0]:
                v = v ^ w
            rest.append(v)
        pool = rest
        out += [SymplecticVector(u), SymplecticVector(w)]
    assert len(out) == 2 * c.k
    return out


def css_split(c: StabilizerCode) -> tuple[np.ndarray, np.ndarray] | None:
    """Return ``(H_X, H_Z)`` X-only and Z-only bases if ``c`` is CSS."""
    n = c.n
    h = c.checks
    ax = gf2.kernel(h[:, n:].T)
    az = gf2.kernel(h[:, :n].T)
    xs = gf2.row_basis(gf2.matmul(ax, h)[:, :n]) if ax.size else np.zeros((0, n), np.uint8)
    zs = gf2.row_basis(gf2.matmul(az, h)[:, n:]) if az.size else np.zeros((0, n), np.uint8)
    if xs.shape[0] + zs.shape[0] != c.m:
        return None
    return xs, zs


def is_css(c: StabilizerCode) -> tuple[bool, tuple[np.ndarray, np.ndarray] | None]:
    split = css_split(c)
    return split is not None, split


def css_code(hx, hz) -> StabilizerCode:
    hx, hz = gf2.as_gf2(hx), gf2.as_gf2(hz)
    n = hx.shape[1] if hx.ndim == 2 and hx.shape[1] else hz.shape[1]
    hx = hx.reshape(-1, n)
    hz = hz.reshape(-1, n)
    top = np.concatenate([hx, np.zeros_like(hx)], axis=1)
    bot = np.concatenate([np.zeros_like(hz), hz], axis=1)
    return StabilizerCode(np.vstack([top, bot]), n)


# ---------------------------------------------------------------- distance

def _pack_bits(a: np.ndarray) -> np.ndarray:
    """Pack the last axis of a 0/1 array into little-endian uint64 words."""
    nbits = a.shape[-1]
    words = max(1, -(-nbits // 64))
    out = np.zeros(a.shape[:-1] + (words,), dtype=np.uint64)
    for b in range(nbits):
        out[..., b // 64] |= a[..., b].astype(np.uint64) << np.uint64(b % 64)
    return out


def _letter_table(c: StabilizerCode):
    """Per-qubit syndromes of X, Z, Y against checks and logicals (packed)."""
    n = c.n
    rows = np.vstack([c.checks, c.logical_matrix])
    single = np.zeros((n, 3, 2 * n), dtype=np.uint8)
    for q in range(n):
        single[q, 0, q] = 1
        single[q, 1, n + q] = 1
        single[q, 2, q] = single[q, 2, n + q] = 1
    synd = pairing_matrix(single.reshape(-1, 2 * n), rows).reshape(n, 3, -1)
    table = _pack_bits(synd)
    stab_mask = _pack_bits(np.r_[np.ones(c.m, np.uint8), np.zeros(2 * c.k, np.uint8)][None, :])[0]
    log_mask = _pack_bits(np.r_[np.zeros(c.m, np.uint8), np.ones(2 * c.k, np.uint8)][None, :])[0]
    return table, stab_mask, log_mask


_LETTER_BITS = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.uint8)


def min_weight_logical(c: StabilizerCode, max_weight: int | None = None, chunk: int = 1 << 22):
    """A minimum-weight element of C^perp outside C, or ``None``.

    Weights 1, 2, ... are enumerated exhaustively with all 3^w letter
    choices, vectorised over packed syndromes.
    """
    n = c.n
    if max_weight is None:
        max_weight = n
    if c.k == 0:
        return None
    table, stab_mask, log_mask = _letter_table(c)
    for w in range(1, min(max_weight, n) + 1):
        letters = np.array(list(itertools.product(range(3), repeat=w)), dtype=np.intp)
        per = max(1, chunk // (3**w))
        combos = itertools.combinations(range(n), w)
        while True:
            block = np.array(list(itertools.islice(combos, per)), dtype=np.intp)
            if block.size == 0:
                break
            acc = table[block[:, 0]]
            for j in range(1, w):
                nxt = table[block[:, j]]
                acc = (acc[:, :, None, :] ^ nxt[:, None, :, :]).reshape(block.shape[0], -1, acc.shape[-1])
            ok = ~((acc & stab_mask).any(axis=-1)) & (acc & log_mask).any(axis=-1)
            hits = np.argwhere(ok)
            if hits.size:
                ci, li = hits[0]
                bits = np.zeros(2 * n, dtype=np.uint8)
                for q, letter in zip(block[ci], letters[li]):
                    bits[q], bits[n + q] = _LETTER_BITS[letter]
                return SymplecticVector(bits)
    return None


def distance(c: StabilizerCode, max_weight: int | None = None):
    """Minimum weight of C^perp minus C, or a ``DistanceBound`` if none up to ``max_weight``."""
    if max_weight is None:
        max_weight = c.n
    v = min_weight_logical(c, max_weight)
    if v is None:
        return DistanceBound(max_weight)
    return pauli_weight(v)


def parameters(c: StabilizerCode, max_weight: int | None = None):
    return c.n, c.k, distance(c, max_weight)


# ------------------------------------------------------------- isomorphism

MAX_ISOMORPHISM_N = 12


def _group_elements(h: np.ndarray) -> np.ndarray:
    m = h.shape[0]
    coeffs = ((np.arange(1 << m)[:, None] >> np.arange(m)) & 1).astype(np.uint8)
    return gf2.matmul(coeffs, h)


def _qubit_signatures(h: np.ndarray, n: int) -> list[tuple]:
    """Per-qubit counts of (letter, weight) over the whole stabilizer group."""
    g = _group_elements(h)
    x, z = g[:, :n].astype(int), g[:, n:].astype(int)
    letter = x + 2 * z
    weight = (x | z).sum(axis=1)
    sigs = []
    for q in range(n):
        keys, counts = np.unique(np.stack([letter[:, q], weight]), axis=1, return_counts=True)
        sigs.append(tuple(map(tuple, np.vstack([keys, counts]).T.tolist())))
    return sigs


def _restrict(h: np.ndarray, n: int, cols) -> np.ndarray:
    cols = list(cols)
    return np.concatenate([h[:, cols], h[:, [n + c for c in cols]]], axis=1)


def code_isomorphic(a: StabilizerCode, b: StabilizerCode) -> list[int] | None:
    """A permutation ``p`` (qubit i of ``a`` goes to ``p[i]``) mapping ``a`` onto ``b``."""
    if a.n != b.n or a.m != b.m:
        return None
    n = a.n
    if n > MAX_ISOMORPHISM_N:
        raise ValueError(f"isomorphism search supports n <= {MAX_ISOMORPHISM_N}, got {n}")
    sa = _qubit_signatures(a.checks, n)
    sb = _qubit_signatures(b.checks, n)
    if sorted(sa) != sorted(sb):
        return None
    order = sorted(range(n), key=lambda q: sum(1 for t in sb if t == sa[q]))
    assign: dict[int, int] = {}
    used = set()

    def consistent() -> bool:
        src = list(assign)
        dst = [assign[q] for q in src]
        return gf2.same_rowspan(_restrict(a.checks, n, src), _restrict(b.checks, n, dst))

    def search(i: int) -> bool:
        if i == n:
            return True
        q = order[i]
        for t in range(n):
            if t in used or sb[t] != sa[q]:
                continue
            assign[q] = t
            used.add(t)
            if consistent() and search(i + 1):
                return True
            del assign[q]
            used.discard(t)
        return False

    if not search(0):
        return None
    perm = [assign[q] for q in range(n)]
    assert a.permuted(perm).same_space(b)
    return perm


# ------------------------------------------------------------ random codes

def random_code(n: int, m: int, seed=None) -> StabilizerCode:
    """Random isotropic full-rank m x 2n check matrix, deterministic per seed."""
    if m < 0 or m > n:
        raise ValueError(f"cannot build {m} independent commuting checks on {n} qubits")
    rng = np.random.default_rng(seed)
    rows = np.zeros((0, 2 * n), dtype=np.uint8)
    while rows.shape[0] < m:
        if rows.shape[0]:
            comp = gf2.kernel(gf2.matmul(rows, omega(n)))
        else:
            comp = gf2.identity(2 * n)
        coeff = rng.integers(0, 2, size=comp.shape[0], dtype=np.uint8)
        v = gf2.matmul(coeff[None, :], comp)[0]
        trial = np.vstack([rows, v[None, :]])
        if gf2.rank(trial) == trial.shape[0]:
            rows = trial
    return StabilizerCode(rows, n)


# ----------------------------------------------------------------- file io

def code_to_text(c: StabilizerCode) -> str:
    return "\n".join([f"{c.n} {c.m}"] + c.paulis()) + "\n"


def code_from_text(text: str) -> StabilizerCode:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty code file")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header {lines[0]!r}, expected 'n m'") from None
    rows = lines[1:]
    if len(rows) != m:
        raise ValueError(f"header declares {m} rows but file has {len(rows)}")
    return StabilizerCode.from_paulis(rows, n)
