"""Symplectic vectors over F2^n + F2^n and Pauli-string notation.

A vector ``v`` on ``n`` qubits is stored as a length ``2n`` bit array
``(v_X | v_Z)``. The letter on qubit ``i`` is I, X, Z or Y according to
``(v_X[i], v_Z[i])`` being 00, 10, 01 or 11.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import as_gf2

_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {"I": (0, 0), ".": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


@dataclass(frozen=True, eq=False)
class SymplecticVector:
    bits: np.ndarray

    def __post_init__(self):
        b = as_gf2(self.bits).reshape(-1)
        if b.size % 2:
            raise ValueError("symplectic vector must have even length")
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @classmethod
    def from_parts(cls, x, z) -> "SymplecticVector":
        x, z = as_gf2(x).reshape(-1), as_gf2(z).reshape(-1)
        if x.size != z.size:
            raise ValueError("x and z parts differ in length")
        return cls(np.concatenate([x, z]))

    @classmethod
    def zero(cls, n: int) -> "SymplecticVector":
        return cls(np.zeros(2 * n, dtype=np.uint8))

    @property
    def n(self) -> int:
        return self.bits.size // 2

    @property
    def x_part(self) -> np.ndarray:
        return self.bits[: self.n]

    @property
    def z_part(self) -> np.ndarray:
        return self.bits[self.n :]

    def __add__(self, other: "SymplecticVector") -> "SymplecticVector":
        _check_n(self, other)
        return SymplecticVector(self.bits ^ other.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticVector) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def __str__(self) -> str:
        return pauli_render(self)

    def __repr__(self) -> str:
        return f"SymplecticVector({pauli_render(self)!r})"


def _check_n(u: SymplecticVector, v: SymplecticVector) -> None:
    if u.n != v.n:
        raise ValueError(f"qubit counts differ: {u.n} vs {v.n}")


def pauli_parse(s: str) -> SymplecticVector:
    """Parse a string over I, X, Y, Z and '.' (a synonym for I)."""
    try:
        pairs = [_BITS[c] for c in s]
    except KeyError as exc:
        raise ValueError(f"invalid Pauli letter {exc.args[0]!r} in {s!r}") from None
    x = [p[0] for p in pairs]
    z = [p[1] for p in pairs]
    return SymplecticVector.from_parts(np.array(x, dtype=np.uint8), np.array(z, dtype=np.uint8))


def pauli_render(v, identity: str = "I") -> str:
    """Render a vector (or a raw length-2n bit array) as a Pauli string."""
    bits = v.bits if isinstance(v, SymplecticVector) else as_gf2(v).reshape(-1)
    n = bits.size // 2
    letters = [_LETTER[(int(bits[i]), int(bits[n + i]))] for i in range(n)]
    return "".join(identity if c == "I" else c for c in letters)


def symplectic_pairing(u: SymplecticVector, v: SymplecticVector) -> int:
    """``u_X . v_Z + u_Z . v_X`` mod 2; zero exactly when the Paulis commute."""
    _check_n(u, v)
    return int((np.dot(u.x_part, v.z_part) + np.dot(u.z_part, v.x_part)) & 1)


def pauli_weight(v: SymplecticVector) -> int:
    """``w(v_X) + w(v_Z) - w(v_X v_Z)``."""
    x = v.x_part.astype(int)
    z = v.z_part.astype(int)
    return int(x.sum() + z.sum() - (x & z).sum())


def omega(n: int) -> np.ndarray:
    """The symplectic form on 2n bits (over F2 the minus sign disappears)."""
    w = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    w[:n, n:] = np.eye(n, dtype=np.uint8)
    w[n:, :n] = np.eye(n, dtype=np.uint8)
    return w


def pairing_matrix(a, b) -> np.ndarray:
    """Pairings between the rows of two matrices in (X | Z) block form."""
    a = as_gf2(a).astype(np.int64)
    b = as_gf2(b).astype(np.int64)
    n = a.shape[1] // 2
    out = a[:, :n] @ b[:, n:].T + a[:, n:] @ b[:, :n].T
    return (out & 1).astype(np.uint8)


def paulis_to_matrix(rows, n: int | None = None) -> np.ndarray:
    vecs = [r if isinstance(r, SymplecticVector) else pauli_parse(r) for r in rows]
    if not vecs:
        if n is None:
            raise ValueError("qubit count needed for an empty list")
        return np.zeros((0, 2 * n), dtype=np.uint8)
    if n is None:
        n = vecs[0].n
    for v in vecs:
        if v.n != n:
            raise ValueError(f"Pauli string {pauli_render(v)!r} is not on {n} qubits")
    return np.stack([v.bits for v in vecs]).astype(np.uint8)


def matrix_to_paulis(m, identity: str = "I") -> list[str]:
    return [pauli_render(row, identity) for row in as_gf2(m)]


def block_text(m) -> str:
    """Rows as ``x-bits | z-bits``."""
    a = as_gf2(m)
    n = a.shape[1] // 2
    return "\n".join(
        "".join(map(str, row[:n])) + " | " + "".join(map(str, row[n:])) for row in a
    )


def product_phase(x1, z1, x2, z2):
    """Exponent ``g`` (summed over qubits) in ``P(v1) P(v2) = i^g P(v1 + v2)``.

    ``P(v)`` denotes the Hermitian Pauli of ``v``; arguments broadcast.
    """
    x1 = np.asarray(x1, dtype=np.int64)
    z1 = np.asarray(z1, dtype=np.int64)
    x2 = np.asarray(x2, dtype=np.int64)
    z2 = np.asarray(z2, dtype=np.int64)
    g = np.where(
        (x1 == 1) & (z1 == 1), z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )
    return g.sum(axis=-1)


def signed_product(rows, signs=None) -> tuple[np.ndarray, int]:
    """Product of signed Hermitian Paulis, in row order, as ``(bits, sign)``.

    The rows must multiply to a Hermitian operator (for example, commute).
    """
    rows = as_gf2(rows)
    n = rows.shape[1] // 2
    acc = np.zeros(2 * n, dtype=np.uint8)
    e = 0 if signs is None else 2 * int(np.sum(signs))
    for row in rows:
        e += int(product_phase(acc[:n], acc[n:], row[:n], row[n:]))
        acc ^= row
    e %= 4
    if e % 2:
        raise ArithmeticError("product is not Hermitian")
    return acc, e // 2
