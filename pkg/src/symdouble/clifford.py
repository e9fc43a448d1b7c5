"""Clifford operators modulo phase, gate circuits and the lifting map.

A Clifford ``U`` on ``n`` qubits is stored by its conjugation action on the
generators ``X_0..X_{n-1}, Z_0..Z_{n-1}``: row ``j`` of ``images`` is the
symplectic vector of ``U g_j U^dag`` and ``signs[j]`` its sign bit. This
determines ``U`` up to global phase. The symplectic matrix acting on column
vectors is ``mat = images.T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

from . import gf2
from .pauli import SymplecticVector, omega, pairing_matrix, pauli_render, product_phase as _phase_exponent, signed_product

ONE_QUBIT = ("H", "S", "SDG", "SQRTX", "SQRTXDG", "X", "Y", "Z")
TWO_QUBIT = ("CX", "CY", "CZ", "SWAP")
NON_UNITARY = ("RESET", "MEASURE", "BARRIER")
GATE_NAMES = ONE_QUBIT + TWO_QUBIT + ("PERM",) + NON_UNITARY


@dataclass(frozen=True)
class Gate:
    """One circuit instruction.

    ``PERM`` carries ``perm`` with the convention that the state of qubit
    ``i`` moves to qubit ``perm[i]``.
    """

    name: str
    qubits: tuple[int, ...] = ()
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        name = self.name.upper()
        if name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if name in ONE_QUBIT + ("RESET", "MEASURE") and len(self.qubits) != 1:
            raise ValueError(f"{name} takes one qubit")
        if name in TWO_QUBIT:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"{name} takes two distinct qubits")
        if name == "PERM":
            if self.perm is None or sorted(self.perm) != list(range(len(self.perm))):
                raise ValueError("PERM needs a permutation")
            object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))

    @property
    def unitary(self) -> bool:
        return self.name not in NON_UNITARY


@dataclass
class CliffordCircuit:
    n: int
    gates: list[Gate] = field(default_factory=list)

    def append(self, name: str, *qubits: int, perm=None) -> "CliffordCircuit":
        g = Gate(name, qubits, perm)
        for q in g.qubits:
            if not 0 <= q < self.n:
                raise ValueError(f"qubit {q} out of range for {self.n} qubits")
        if g.perm is not None and len(g.perm) != self.n:
            raise ValueError("PERM size does not match circuit width")
        self.gates.append(g)
        return self

    def extend(self, other: "CliffordCircuit") -> "CliffordCircuit":
        if other.n != self.n:
            raise ValueError("circuit widths differ")
        self.gates.extend(other.gates)
        return self

    def copy(self) -> "CliffordCircuit":
        return CliffordCircuit(self.n, list(self.gates))

    def unitary_part(self) -> "CliffordCircuit":
        return CliffordCircuit(self.n, [g for g in self.gates if g.unitary])

    def inverse(self) -> "CliffordCircuit":
        """Inverse of a purely unitary circuit."""
        inv = {"S": "SDG", "SDG": "S", "SQRTX": "SQRTXDG", "SQRTXDG": "SQRTX"}
        out = CliffordCircuit(self.n)
        for g in reversed(self.gates):
            if not g.unitary:
                if g.name == "BARRIER":
                    out.gates.append(g)
                    continue
                raise ValueError(f"cannot invert {g.name}")
            if g.name == "PERM":
                back = [0] * self.n
                for i, p in enumerate(g.perm):
                    back[p] = i
                out.gates.append(Gate("PERM", (), tuple(back)))
            else:
                out.gates.append(Gate(inv.get(g.name, g.name), g.qubits))
        return out

    def symplectic(self) -> "SymplecticClifford":
        return circuit_symplectic(self)

    def __len__(self) -> int:
        return len(self.gates)


# ----------------------------------------------------------- gate kernels
#
# Each kernel conjugates a batch of Pauli rows (x, z, r) by one gate, with
# the sign update rules of Aaronson and Gottesman. Arrays are modified in
# place; ``r`` may be None when signs are not tracked.


def _h(x, z, r, q):
    if r is not None:
        r ^= x[:, q] & z[:, q]
    x[:, q], z[:, q] = z[:, q].copy(), x[:, q].copy()


def _s(x, z, r, q):
    if r is not None:
        r ^= x[:, q] & z[:, q]
    z[:, q] ^= x[:, q]


def _sdg(x, z, r, q):
    if r is not None:
        r ^= x[:, q] & (z[:, q] ^ 1)
    z[:, q] ^= x[:, q]


def _cx(x, z, r, c, t):
    if r is not None:
        r ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
    x[:, t] ^= x[:, c]
    z[:, c] ^= z[:, t]


def apply_gate_rows(g: Gate, x, z, r=None) -> None:
    name, qs = g.name, g.qubits
    if name == "H":
        _h(x, z, r, qs[0])
    elif name == "S":
        _s(x, z, r, qs[0])
    elif name == "SDG":
        _sdg(x, z, r, qs[0])
    elif name == "SQRTX":
        _h(x, z, r, qs[0]); _s(x, z, r, qs[0]); _h(x, z, r, qs[0])
    elif name == "SQRTXDG":
        _h(x, z, r, qs[0]); _sdg(x, z, r, qs[0]); _h(x, z, r, qs[0])
    elif name == "X":
        if r is not None:
            r ^= z[:, qs[0]]
    elif name == "Z":
        if r is not None:
            r ^= x[:, qs[0]]
    elif name == "Y":
        if r is not None:
            r ^= x[:, qs[0]] ^ z[:, qs[0]]
    elif name == "CX":
        _cx(x, z, r, *qs)
    elif name == "CZ":
        c, t = qs
        _h(x, z, r, t); _cx(x, z, r, c, t); _h(x, z, r, t)
    elif name == "CY":
        c, t = qs
        _sdg(x, z, r, t); _cx(x, z, r, c, t); _s(x, z, r, t)
    elif name == "SWAP":
        a, b = qs
        x[:, [a, b]] = x[:, [b, a]]
        z[:, [a, b]] = z[:, [b, a]]
    elif name == "PERM":
        p = list(g.perm)
        x[:, p] = x.copy()
        z[:, p] = z.copy()
    elif name == "BARRIER":
        pass
    else:
        raise ValueError(f"{name} is not a unitary gate")


# ----------------------------------------------------------- symplectic op

class SymplecticClifford:
    """A Clifford modulo phase: symplectic matrix plus sign data."""

    def __init__(self, images, signs=None):
        images = gf2.as_gf2(images)
        two_n = images.shape[0]
        if images.shape != (two_n, two_n) or two_n % 2:
            raise ValueError("images must be a square 2n x 2n matrix")
        n = two_n // 2
        if not np.array_equal(pairing_matrix(images, images), omega(n)):
            raise ValueError("matrix is not symplectic")
        self.n = n
        self.images = images
        self.signs = np.zeros(two_n, np.uint8) if signs is None else gf2.as_gf2(signs).reshape(two_n).copy()

    @classmethod
    def identity(cls, n: int) -> "SymplecticClifford":
        return cls(gf2.identity(2 * n))

    @classmethod
    def from_matrix(cls, mat, offset=None) -> "SymplecticClifford":
        """Build from the column-action matrix and an optional Pauli offset.

        The offset ``p`` means the operator ``P_p U`` where ``U`` sends every
        generator to its image with a plus sign.
        """
        images = gf2.as_gf2(mat).T.copy()
        op = cls(images)
        if offset is not None:
            p = offset.bits if isinstance(offset, SymplecticVector) else gf2.as_gf2(offset)
            op.signs = pairing_matrix(images, p[None, :])[:, 0]
        return op

    @property
    def mat(self) -> np.ndarray:
        return self.images.T.copy()

    @property
    def pauli_offset(self) -> SymplecticVector:
        """The Pauli ``p`` with ``self = P_p U_+`` (see ``from_matrix``)."""
        # signs_j = <p, images_j>  <=>  images @ Omega @ p = signs
        p = gf2.solve(gf2.matmul(self.images, omega(self.n)), self.signs)
        return SymplecticVector(p)

    def apply(self, g: Gate) -> "SymplecticClifford":
        """The operator ``g . self`` (``g`` applied after ``self``)."""
        if not g.unitary:
            if g.name == "BARRIER":
                return self
            raise ValueError(f"{g.name} has no symplectic semantics")
        n = self.n
        x = self.images[:, :n].copy()
        z = self.images[:, n:].copy()
        r = self.signs.copy()
        apply_gate_rows(g, x, z, r)
        return SymplecticClifford(np.concatenate([x, z], axis=1), r)

    def conjugate(self, v, sign: int = 0) -> tuple[np.ndarray, int]:
        """Image ``U (-1)^sign P(v) U^dag`` as ``(bits, sign)``."""
        bits = v.bits if isinstance(v, SymplecticVector) else gf2.as_gf2(v).reshape(-1)
        rows, signs = self.conjugate_rows(bits[None, :], np.array([sign], np.uint8))
        return rows[0], int(signs[0])

    def conjugate_rows(self, rows, signs) -> tuple[np.ndarray, np.ndarray]:
        n = self.n
        rows = gf2.as_gf2(rows)
        # P(v) = i^{x.z} prod X^x prod Z^z; multiply the images of those factors
        exp = 2 * signs.astype(np.int64) + (rows[:, :n].astype(np.int64) & rows[:, n:]).sum(axis=1)
        acc = np.zeros_like(rows)
        for j in range(2 * n):
            use = rows[:, j].astype(bool)
            if not use.any():
                continue
            img = self.images[j]
            exp[use] += 2 * int(self.signs[j]) + _phase_exponent(
                acc[use, :n], acc[use, n:], img[None, :n], img[None, n:]
            )
            acc[use] ^= img
        exp %= 4
        if (exp % 2).any():
            raise ArithmeticError("non-Hermitian image; inconsistent sign data")
        return acc, (exp // 2).astype(np.uint8)

    def compose(self, other: "SymplecticClifford") -> "SymplecticClifford":
        """``self . other``: apply ``other`` first, then ``self``."""
        if other.n != self.n:
            raise ValueError("qubit counts differ")
        imgs, sg = self.conjugate_rows(other.images, other.signs)
        return SymplecticClifford(imgs, sg)

    def __matmul__(self, other: "SymplecticClifford") -> "SymplecticClifford":
        return self.compose(other)

    def inverse(self) -> "SymplecticClifford":
        n = self.n
        trial = SymplecticClifford(gf2.inverse(self.mat).T.copy())
        # trial . self sends g_j to (-1)^{s_j} g_j; a Pauli applied afterwards
        # with <p, g_j> = s_j cancels those signs.
        _, s = trial.conjugate_rows(self.images, self.signs)
        p = gf2.solve(omega(n), s)
        fix = SymplecticClifford.from_matrix(gf2.identity(2 * n), p)
        return fix.compose(trial)

    def equals(self, other: "SymplecticClifford", modulo_pauli: bool = False) -> bool:
        if self.n != other.n or not np.array_equal(self.images, other.images):
            return False
        return modulo_pauli or np.array_equal(self.signs, other.signs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticClifford) and self.equals(other)

    def __hash__(self):
        return hash((self.images.tobytes(), self.signs.tobytes()))

    def is_identity(self, modulo_pauli: bool = False) -> bool:
        return self.equals(SymplecticClifford.identity(self.n), modulo_pauli)

    def __repr__(self) -> str:
        imgs = [("-" if s else "+") + pauli_render(row) for row, s in zip(self.images, self.signs)]
        return f"SymplecticClifford(n={self.n}, images={imgs})"


def gate_symplectic(g: Gate | str, n: int | None = None, *qubits: int) -> SymplecticClifford:
    """Symplectic semantics of a single unitary gate."""
    if isinstance(g, str):
        g = Gate(g, qubits)
    if not g.unitary:
        raise ValueError(f"{g.name} is not unitary")
    if n is None:
        n = len(g.perm) if g.perm else max(g.qubits) + 1
    return SymplecticClifford.identity(n).apply(g)


def circuit_symplectic(circ: CliffordCircuit) -> SymplecticClifford:
    op = SymplecticClifford.identity(circ.n)
    n = circ.n
    x = op.images[:, :n].copy()
    z = op.images[:, n:].copy()
    r = op.signs.copy()
    for g in circ.gates:
        if g.name == "BARRIER":
            continue
        if not g.unitary:
            raise ValueError(f"{g.name} has no symplectic semantics")
        apply_gate_rows(g, x, z, r)
    return SymplecticClifford(np.concatenate([x, z], axis=1), r)


def single_qubit_words() -> dict[str, np.ndarray]:
    """The six elements of Sp(2, F2) named by words in H and S.

    A word is read as an operator product, so "HS" applies S first.
    """
    hbar = np.array([[0, 1], [1, 0]], np.uint8)
    sbar = np.array([[1, 0], [1, 1]], np.uint8)
    letters = {"H": hbar, "S": sbar}
    out = {}
    for word in ("I", "H", "S", "HS", "SH", "HSH"):
        m = gf2.identity(2)
        if word != "I":
            for c in word:
                m = gf2.matmul(m, letters[c])
        out[word] = m
    return out


def name_single_qubit(op: SymplecticClifford) -> str:
    """Word for a one-qubit symplectic matrix, ignoring Pauli offsets."""
    if op.n != 1:
        raise ValueError("expected a one-qubit operator")
    for word, m in single_qubit_words().items():
        if np.array_equal(m, op.mat):
            return word
    raise AssertionError("unreachable: Sp(2, F2) has six elements")


def clifford_order(n: int) -> int:
    """Order of the Clifford group on n qubits including the eighth roots of unity."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return 8 * prod(2 * (4**j - 1) * 4**j for j in range(1, n + 1))


def random_symplectic(n: int, rng) -> SymplecticClifford:
    """Random element built from a long random gate word (good enough for tests)."""
    rng = np.random.default_rng(rng)
    circ = random_circuit(n, 8 * n * n + 8, rng)
    return circuit_symplectic(circ)


def random_circuit(n: int, length: int, rng, gates=None) -> CliffordCircuit:
    rng = np.random.default_rng(rng)
    names = list(gates or (ONE_QUBIT + (TWO_QUBIT if n > 1 else ())))
    circ = CliffordCircuit(n)
    for _ in range(length):
        name = names[rng.integers(len(names))]
        if name in TWO_QUBIT:
            a, b = rng.choice(n, size=2, replace=False)
            circ.append(name, int(a), int(b))
        else:
            circ.append(name, int(rng.integers(n)))
    return circ


# ---------------------------------------------------------------- lifting

def lift_matrix(mat) -> np.ndarray:
    """The 4n x 4n matrix ``M (+) (M^-1)^T`` on the doubled qubits."""
    m = gf2.as_gf2(mat)
    two_n = m.shape[0]
    out = gf2.zeros(2 * two_n, 2 * two_n)
    out[:two_n, :two_n] = m
    out[two_n:, two_n:] = gf2.inverse(m).T
    return out


def lift_clifford(op: SymplecticClifford) -> SymplecticClifford:
    """Lift a Clifford on n base qubits to a phase-free one on 2n qubits.

    Base qubit ``i`` owns the fiber ``{i, i + n}`` of doubled qubits.
    Pauli offsets are dropped.
    """
    return SymplecticClifford.from_matrix(lift_matrix(op.mat))


def lift_to_circuit(op: SymplecticClifford) -> CliffordCircuit:
    """CX/SWAP/PERM circuit on 2n qubits implementing ``lift_clifford(op)``."""
    a = op.mat.copy()  # X-part action on the 2n doubled qubits
    size = a.shape[0]
    work = a.copy()
    ops = []
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r, col]), None)
        if pivot is None:
            raise RuntimeError("singular matrix during synthesis")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            ops.append(("SWAP", col, pivot))
        for r in range(size):
            if r != col and work[r, col]:
                work[r] ^= work[col]
                ops.append(("CX", col, r))
    circ = CliffordCircuit(size)
    # work = E_r ... E_1 a = I, so a = E_1 ... E_r: apply E_r first
    for name, c, t in reversed(ops):
        circ.append(name, c, t)
    target = lift_clifford(op)
    if not circuit_symplectic(circ).equals(target):
        raise RuntimeError("lifted circuit synthesis failed verification")
    return circ


def lift_circuit_gatewise(circ: CliffordCircuit) -> CliffordCircuit:
    """Lift a base circuit gate by gate (each gate becomes CX/SWAP/PERM)."""
    n = circ.n
    out = CliffordCircuit(2 * n)
    for g in circ.gates:
        if g.name == "BARRIER":
            out.gates.append(g)
            continue
        if g.name == "PERM":
            out.append("PERM", perm=list(g.perm) + [p + n for p in g.perm])
            continue
        if g.name == "SWAP":
            a, b = g.qubits
            out.append("SWAP", a, b).append("SWAP", a + n, b + n)
            continue
        if g.name in ("X", "Y", "Z"):
            continue
        local = gate_symplectic(g.name, n, *g.qubits)
        out.extend(lift_to_circuit(local))
    return out


# ---------------------------------------------------------- logical action

def logical_action(code, op, basis=None) -> SymplecticClifford | None:
    """Induced action of ``op`` on C^perp / C in the given logical basis.

    ``basis`` defaults to ``code.logical_basis`` (ordered X1, Z1, X2, ...).
    Returns None if ``op`` does not map the stabilizer space to itself.
    Signs are ignored, so the result is a logical operator modulo Paulis.
    """
    if isinstance(op, CliffordCircuit):
        op = circuit_symplectic(op.unitary_part())
    if op.n != code.n:
        raise ValueError("operator and code sizes differ")
    imgs = gf2.matmul(code.checks, op.mat.T)
    for row in imgs:
        if not code.contains(row):
            return None
    if basis is None:
        basis = code.logical_basis
    lb = np.stack([v.bits if isinstance(v, SymplecticVector) else gf2.as_gf2(v) for v in basis]) if len(basis) else np.zeros((0, 2 * code.n), np.uint8)
    k = lb.shape[0] // 2
    xs, zs = lb[0::2], lb[1::2]
    limg = gf2.matmul(lb, op.mat.T)
    # coordinate of X_i is <img, Z_i>, of Z_i is <img, X_i>
    cx = pairing_matrix(limg, zs)
    cz = pairing_matrix(limg, xs)
    images = np.concatenate([cx, cz], axis=1)  # rows in basis order X1,Z1,...
    order = [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)]
    return SymplecticClifford(images[order])


def _phase_of_product(rows) -> tuple[np.ndarray, int]:
    """``prod rows = i^e P(sum)`` for Hermitian-form Paulis ``P``; returns (sum, e mod 4)."""
    rows = gf2.as_gf2(rows)
    n = rows.shape[1] // 2
    acc = np.zeros(2 * n, dtype=np.uint8)
    e = 0
    for row in rows:
        e += int(_phase_exponent(acc[:n], acc[n:], row[:n], row[n:]))
        acc ^= row
    return acc, e % 4


def logical_clifford(code, op, basis=None) -> SymplecticClifford | None:
    """Exact induced logical Clifford (with signs) of ``op`` on ``code``.

    The stabilizer group is taken with every check signed +. A logical
    Pauli with coordinates ``(x | z)`` is represented by
    ``i^{x.z} prod_j Xbar_j^{x_j} prod_j Zbar_j^{z_j}``. Returns None when
    ``op`` does not map the signed stabilizer group to itself.
    """
    if isinstance(op, CliffordCircuit):
        op = circuit_symplectic(op.unitary_part())
    if op.n != code.n:
        raise ValueError("operator and code sizes differ")
    imgs, sg = op.conjugate_rows(code.checks, np.zeros(code.m, np.uint8))
    for row, s in zip(imgs, sg):
        if not code.signed_member(row, s):
            return None
    if basis is None:
        basis = code.logical_basis
    lb = np.stack([v.bits if isinstance(v, SymplecticVector) else gf2.as_gf2(v) for v in basis]) if len(basis) else np.zeros((0, 2 * code.n), np.uint8)
    k = lb.shape[0] // 2
    xs, zs = lb[0::2], lb[1::2]
    gens = np.concatenate([xs, zs])  # generator order X1..Xk, Z1..Zk
    limg, lsg = op.conjugate_rows(gens, np.zeros(2 * k, np.uint8))
    system = np.concatenate([gens, code.checks]).T
    images = np.zeros((2 * k, 2 * k), np.uint8)
    signs = np.zeros(2 * k, np.uint8)
    for j in range(2 * k):
        coeff = gf2.solve(system, limg[j])
        if coeff is None:
            raise ArithmeticError("image of a logical operator left the normalizer")
        c, a = coeff[: 2 * k], coeff[2 * k:]
        lbits, e_log = _phase_of_product(gens[c.astype(bool)]) if c.any() else (np.zeros(2 * code.n, np.uint8), 0)
        e_log = (e_log + int(c[:k] @ c[k:])) % 4
        if e_log % 2:
            raise ArithmeticError("non-Hermitian logical representative")
        sbits, s_stab = signed_product(code.checks[a.astype(bool)]) if a.any() else (np.zeros(2 * code.n, np.uint8), 0)
        e = int(_phase_exponent(lbits[: code.n], lbits[code.n:], sbits[: code.n], sbits[code.n:])) % 4
        images[j] = c
        signs[j] = (int(lsg[j]) + e_log // 2 + s_stab + e // 2) % 2
    return SymplecticClifford(images, signs)


def synthesize(op: SymplecticClifford) -> CliffordCircuit:
    """A circuit over H, S, SQRTX, CX, SWAP and Paulis implementing ``op`` exactly."""
    n = op.n
    work = op
    gates: list[Gate] = []

    def push(name, *qs):
        nonlocal work
        g = Gate(name, qs)
        gates.append(g)
        work = work.apply(g)

    # reduce the images of X_i, Z_i to themselves one qubit at a time
    for i in range(n):
        a = lambda: work.images[i]
        for j in range(i, n):
            if a()[n + j]:
                push("S" if a()[j] else "H", j)
        if not a()[i]:
            j = next(j for j in range(i + 1, n) if a()[j])
            push("SWAP", i, j)
        for j in range(i + 1, n):
            if a()[j]:
                push("CX", i, j)
        b = lambda: work.images[n + i]
        for j in range(i + 1, n):
            if b()[j]:
                if b()[n + j]:
                    push("S", j)
                push("H", j)
        for j in range(i + 1, n):
            if b()[n + j]:
                push("CX", j, i)
        if b()[i]:
            push("SQRTX", i)
    # remaining signs are a Pauli: P_p flips generator j iff <p, g_j> = 1
    p = gf2.solve(omega(n), work.signs)
    for q in range(n):
        if p[q] and p[n + q]:
            push("Y", q)
        elif p[q]:
            push("X", q)
        elif p[n + q]:
            push("Z", q)
    if not work.is_identity():
        raise RuntimeError("synthesis did not reach the identity")
    circ = CliffordCircuit(n, gates).inverse()
    if not circuit_symplectic(circ).equals(op):
        raise RuntimeError("synthesized circuit failed verification")
    return circ
