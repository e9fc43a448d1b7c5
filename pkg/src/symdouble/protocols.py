"""Executable protocols: genon braiding on [[4,1,2]], lifted-gate benchmarks
on the doubled codes [[8,2,2]] and [[10,2,3]], and logical randomized
benchmarking with postselection.

Conventions used throughout:

* A permutation is written in one-line form ``(a_1, ..., a_n)`` (1-based):
  position ``j`` receives the qubit ``a_j``. It compiles to a ``PERM`` gate.
* A local Clifford word such as ``"SH"`` is an operator product, so ``H``
  is applied first.
* Logical names in :data:`BRAID_TABLE_412` are written in time order, so
  the operator product ``SH`` is listed as ``"HS"``.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .clifford import (
    CliffordCircuit,
    Gate,
    SymplecticClifford,
    circuit_symplectic,
    logical_clifford,
    name_single_qubit,
    single_qubit_words,
    synthesize,
)
from .code import StabilizerCode, code_from_paulis
from .double import double_code
from .pauli import SymplecticVector, omega, pairing_matrix, pauli_parse, signed_product
from .qasm import parse_qasm
from .sim import NoiseModel, Tableau, run, tableau_run

WORDS = ("I", "H", "S", "HS", "SH", "HSH")
# operator-order word -> time-order name used by the reference logical column
TIME_ORDER_NAME = {"I": "I", "H": "H", "S": "S", "HS": "SH", "SH": "HS", "HSH": "HSH"}

# (one-line permutation, local words on qubits 1..4, logical gate in time order)
BRAID_TABLE_412 = (
    ((1, 2, 3, 4), ("I", "I", "I", "I"), "I"),
    ((1, 2, 4, 3), ("S", "HSH", "SH", "HS"), "HSH"),
    ((1, 3, 2, 4), ("HSH", "SH", "HS", "S"), "S"),
    ((1, 3, 4, 2), ("HS", "S", "HSH", "SH"), "HS"),
    ((1, 4, 2, 3), ("SH", "HS", "S", "HSH"), "SH"),
    ((1, 4, 3, 2), ("H", "H", "H", "H"), "H"),
    ((2, 1, 3, 4), ("SH", "HS", "S", "HSH"), "HSH"),
    ((2, 1, 4, 3), ("H", "H", "H", "H"), "I"),
    ((2, 3, 1, 4), ("S", "HSH", "SH", "HS"), "SH"),
    ((2, 3, 4, 1), ("I", "I", "I", "I"), "H"),
    ((2, 4, 1, 3), ("HS", "S", "HSH", "SH"), "S"),
    ((2, 4, 3, 1), ("HSH", "SH", "HS", "S"), "HS"),
    ((3, 1, 2, 4), ("HS", "S", "HSH", "SH"), "HS"),
    ((3, 1, 4, 2), ("HSH", "SH", "HS", "S"), "S"),
    ((3, 2, 1, 4), ("H", "H", "H", "H"), "H"),
    ((3, 2, 4, 1), ("SH", "HS", "S", "HSH"), "SH"),
    ((3, 4, 1, 2), ("I", "I", "I", "I"), "I"),
    ((3, 4, 2, 1), ("S", "HSH", "SH", "HS"), "HSH"),
    ((4, 1, 2, 3), ("I", "I", "I", "I"), "H"),
    ((4, 1, 3, 2), ("S", "HSH", "SH", "HS"), "SH"),
    ((4, 2, 1, 3), ("HSH", "SH", "HS", "S"), "HS"),
    ((4, 2, 3, 1), ("HS", "S", "HSH", "SH"), "S"),
    ((4, 3, 1, 2), ("SH", "HS", "S", "HSH"), "HSH"),
    ((4, 3, 2, 1), ("H", "H", "H", "H"), "I"),
)

# logical basis (Xbar, Zbar) of the tetrahedron [[4,1,2]] code used for naming
BRAID_BASIS_412 = ("ZXII", "IZXI")


def _snippet(n: int, body: str) -> CliffordCircuit:
    return parse_qasm(f"OPENQASM 2.0;\nqreg q[{n}];\n{body}")


# hand-built circuits from the reference listings
PREP_412 = _snippet(4, "h q[1]; h q[0]; cy q[0], q[1]; h q[2]; cy q[1], q[2]; cx q[0], q[3]; h q[0]; x q[0]; z q[0];")
DECODE_412 = _snippet(
    4,
    "cy q[0], q[1]; cz q[0], q[2]; h q[0]; cy q[1], q[2]; cz q[1], q[3]; h q[1];"
    "cz q[2], q[0]; cy q[2], q[3]; h q[2]; sdg q[3]; h q[3]; s q[3];",
)
ENCODER_412 = DECODE_412.inverse()
PREP_822_00 = _snippet(
    8,
    "h q[7]; h q[6]; h q[5]; cx q[7], q[4]; cx q[6], q[4]; cx q[5], q[4];"
    "cx q[4], q[3]; cx q[6], q[2]; cx q[5], q[2]; cx q[3], q[2]; cx q[5], q[1]; cx q[4], q[1];"
    "cx q[2], q[1]; cx q[5], q[0];",
)
PREP_1023_PP = _snippet(
    10,
    "h q[9]; h q[8]; h q[7]; h q[6]; h q[5]; h q[4];"
    "cx q[7], q[3]; cx q[5], q[3]; cx q[4], q[3]; cx q[9], q[2]; cx q[6], q[2]; cx q[3], q[2];"
    "cx q[8], q[1]; cx q[5], q[1]; cx q[2], q[1]; cx q[8], q[0]; cx q[6], q[0]; cx q[4], q[0];",
)


# ------------------------------------------------------------ small helpers

def perm_gate(one_line) -> Gate:
    """PERM gate for a 1-based one-line permutation (position j receives a_j)."""
    a = [int(v) - 1 for v in one_line]
    return Gate("PERM", (), tuple(a.index(i) for i in range(len(a))))


def word_gates(word: str, q: int) -> list[Gate]:
    """Gates for an operator-order word on qubit ``q`` (rightmost letter first)."""
    if word == "I":
        return []
    return [Gate(c, (q,)) for c in reversed(word)]


def pauli_gates(bits, qubits=None, descending: bool = True) -> list[Gate]:
    """X/Y/Z gates for a Pauli given as symplectic bits."""
    bits = bits.bits if isinstance(bits, SymplecticVector) else gf2.as_gf2(bits).reshape(-1)
    n = bits.size // 2
    order = range(n - 1, -1, -1) if descending else range(n)
    out = []
    for q in order:
        x, z = bits[q], bits[n + q]
        if x or z:
            name = "Y" if x and z else ("X" if x else "Z")
            out.append(Gate(name, (q if qubits is None else qubits[q],)))
    return out


def final_labels(circ: CliffordCircuit) -> list[int]:
    """Physical wire of each circuit qubit after the circuit's permutations."""
    labels = list(range(circ.n))
    for g in circ.gates:
        if g.name == "PERM":
            back = [0] * circ.n
            for i, p in enumerate(g.perm):
                back[p] = i
            labels = [labels[back[j]] for j in range(circ.n)]
        elif g.name == "SWAP":
            a, b = g.qubits
            labels[a], labels[b] = labels[b], labels[a]
    return labels


def measure_all(circ: CliffordCircuit) -> list[int]:
    """Append measurements in physical wire order; returns the circuit qubit
    measured into each record slot."""
    labels = final_labels(circ)
    where = [0] * circ.n
    for v, p in enumerate(labels):
        where[p] = v
    for v in where:
        circ.append("MEASURE", v)
    return where


def _basis_rows(basis) -> np.ndarray:
    return np.stack([pauli_parse(b).bits if isinstance(b, str) else (b.bits if isinstance(b, SymplecticVector) else gf2.as_gf2(b)) for b in basis])


def state_sign(rows, signs, v) -> int | None:
    """Eigenvalue bit of the Pauli ``v`` on the stabilizer state (rows, signs),
    or None when ``v`` is not in the state's stabilizer group."""
    v = v.bits if isinstance(v, SymplecticVector) else gf2.as_gf2(v).reshape(-1)
    c = gf2.solve(gf2.as_gf2(rows).T, v)
    if c is None:
        return None
    use = c.astype(bool)
    if not use.any():
        return 0
    bits, s = signed_product(rows[use], signs[use])
    return int(s) if np.array_equal(bits, v) else None


def same_state(a: Tableau, b: Tableau) -> bool:
    ra, sa = a.stabilizers()
    rb, sb = b.stabilizers()
    return all(state_sign(rb, sb, r) == int(s) for r, s in zip(ra, sa))


# ----------------------------------------------------------------- encoders

def encoder_circuit(code: StabilizerCode, basis=None) -> CliffordCircuit:
    """Unitary encoder: ``Z`` on wire ``i < m`` goes to check ``i`` and the
    logical wires ``m..n-1`` carry the logical basis (X1, Z1, X2, ...)."""
    n, m = code.n, code.m
    if m == 0 and basis is None:
        return CliffordCircuit(n)
    lb = _basis_rows(basis) if basis is not None else np.stack([v.bits for v in code.logical_basis]) if code.k else np.zeros((0, 2 * n), np.uint8)
    checks = code.checks
    known = np.concatenate([checks, lb])
    # destabilizer i pairs to 1 with check i and to 0 with the rest
    system = gf2.matmul(known, omega(n))
    destab = np.zeros((m, 2 * n), np.uint8)
    for i in range(m):
        rhs = np.zeros(known.shape[0], np.uint8)
        rhs[i] = 1
        sol = gf2.solve(system, rhs)
        if sol is None:
            raise ArithmeticError("no destabilizer found")
        destab[i] = sol
    for i in range(m):
        for l in range(i):
            if pairing_matrix(destab[i][None], destab[l][None])[0, 0]:
                destab[i] ^= checks[l]
    images = np.zeros((2 * n, 2 * n), np.uint8)
    images[:m] = destab
    images[n:n + m] = checks
    images[m:n] = lb[0::2]
    images[n + m:] = lb[1::2]
    return synthesize(SymplecticClifford(images))


def css_prep(code: StabilizerCode, x_rows) -> CliffordCircuit:
    """Prepare the uniform superposition over the row space of ``x_rows``
    (X-type rows as x-part bit vectors) with H on pivots and CX fan-out."""
    n = code.n
    red = gf2.row_reduce(gf2.as_gf2(x_rows))
    circ = CliffordCircuit(n)
    rows = red.rref[: red.rank]
    for r, p in zip(rows, red.pivots):
        circ.append("H", int(p))
    for r, p in zip(rows, red.pivots):
        for t in np.flatnonzero(r):
            if t != p:
                circ.append("CX", int(p), int(t))
    return circ



def prep_bad_faults(circ: CliffordCircuit, hz, z_logicals) -> list[tuple[int, tuple[int, int]]]:
    """Single X-type faults after a CX of a CX/H prep circuit that reach the
    Z-basis readout as an undetected logical flip."""
    gates = circ.gates
    bad = []
    for i, g in enumerate(gates):
        if g.name != "CX":
            continue
        for pat in ((1, 0), (0, 1), (1, 1)):
            f = np.zeros(circ.n, np.uint8)
            f[list(g.qubits)] = pat
            for h in gates[i + 1:]:
                if h.name == "CX":
                    f[h.qubits[1]] ^= f[h.qubits[0]]
                elif h.name not in ("X", "Z", "Y", "BARRIER"):
                    raise ValueError("prep circuit must use H and CX only after the H layer")
            if not gf2.matmul(hz, f).any() and gf2.matmul(z_logicals, f).any():
                bad.append((i, pat))
    return bad


def fault_tolerant_css_prep(code: StabilizerCode, x_rows, z_logicals, tries: int = 2000, seed: int = 0) -> CliffordCircuit | None:
    """Random search over generating sets, pivots and CX order for a
    :func:`css_prep` circuit with no bad single CX faults."""
    rng = np.random.default_rng(seed)
    x_rows = gf2.row_basis(gf2.as_gf2(x_rows))
    z_logicals = gf2.as_gf2(z_logicals)
    n = code.n
    for _ in range(tries):
        cols = rng.permutation(n)
        red = gf2.row_reduce(x_rows[:, cols])
        rows = red.rref[: red.rank][:, np.argsort(cols)]
        pivots = [int(cols[p]) for p in red.pivots]
        pairs = [(p, int(t)) for r, p in zip(rows, pivots) for t in np.flatnonzero(r) if t != p]
        rng.shuffle(pairs)
        circ = CliffordCircuit(n)
        for p in pivots:
            circ.append("H", p)
        for c, t in pairs:
            circ.append("CX", c, t)
        if not prep_bad_faults(circ, code.hz, z_logicals):
            return circ
    return None

# ------------------------------------------------------------ braiding

@dataclass(frozen=True)
class BraidProtocolEntry:
    """A permutation with local Clifford and Pauli fix-ups preserving the code."""

    perm: tuple[int, ...]          # one-line, 1-based
    local_fix: tuple[str, ...]     # operator-order words per qubit
    pauli_fix: str                 # Pauli applied last, e.g. "IXIZ"
    logical: SymplecticClifford    # exact action on the k logical qubits

    @property
    def logical_word(self) -> str:
        """Operator-order name of the logical gate (k = 1, modulo Paulis)."""
        return name_single_qubit(self.logical)

    @property
    def logical_name(self) -> str:
        """Time-order name, as in :data:`BRAID_TABLE_412`."""
        return TIME_ORDER_NAME[self.logical_word]

    def circuit(self) -> CliffordCircuit:
        n = len(self.perm)
        circ = CliffordCircuit(n, [perm_gate(self.perm)])
        for q, w in enumerate(self.local_fix):
            circ.gates.extend(word_gates(w, q))
        circ.gates.extend(pauli_gates(pauli_parse(self.pauli_fix), descending=False))
        return circ


def _word_mats() -> list[np.ndarray]:
    mats = single_qubit_words()
    return [mats[w] for w in WORDS]


def sign_fix(code: StabilizerCode, circ: CliffordCircuit) -> np.ndarray | None:
    """Pauli bits ``p`` such that ``P_p`` after ``circ`` restores every check
    to sign +; None if ``circ`` does not preserve the stabilizer space."""
    op = circuit_symplectic(circ)
    imgs, sg = op.conjugate_rows(code.checks, np.zeros(code.m, np.uint8))
    wrong = np.zeros(code.m, np.uint8)
    for i, (row, s) in enumerate(zip(imgs, sg)):
        if code.signed_member(row, s):
            continue
        if not code.signed_member(row, s ^ 1):
            return None
        wrong[i] = 1
    # conjugating by P_p flips sign of the image row when <p, row> = 1
    p = gf2.solve(gf2.matmul(imgs, omega(code.n)), wrong)
    if p is None:
        raise ArithmeticError("no Pauli sign fix")
    return p


def braid_protocol(gc, basis=None, omitted: list | None = None) -> list[BraidProtocolEntry]:
    """Search all qubit permutations for local Clifford fix-ups.

    ``gc`` is a GenonCode or a StabilizerCode. For each permutation (in
    lexicographic order) the first word tuple in ``WORDS`` order that
    preserves the stabilizer space is kept. Permutations without a fix-up
    are appended to ``omitted`` when given.
    """
    code = gc.code if hasattr(gc, "code") and not isinstance(gc, StabilizerCode) else gc
    n = code.n
    if basis is not None:
        basis = [pauli_parse(b) if isinstance(b, str) else b for b in basis]
    mats = _word_mats()
    norm = code.normalizer  # rows spanning C^perp; c in C iff c commutes with all
    entries = []
    for a in itertools.permutations(range(1, n + 1)):
        g = perm_gate(a)
        cp = np.zeros_like(code.checks)
        for i, t in enumerate(g.perm):
            cp[:, t] = code.checks[:, i]
            cp[:, n + t] = code.checks[:, n + i]
        # contributions of qubit q under word w to <image, normalizer row>
        acc = np.zeros((1, code.m, norm.shape[0]), np.uint8)
        for q in range(n):
            xz = np.stack([cp[:, q], cp[:, n + q]])  # 2 x m
            per = []
            for mat in mats:
                img = gf2.matmul(mat, xz)  # rows: x', z'
                per.append(
                    (np.outer(img[0], norm[:, n + q]) ^ np.outer(img[1], norm[:, q])).astype(np.uint8)
                )
            per = np.stack(per)
            acc = (acc[:, None] ^ per[None]).reshape(-1, code.m, norm.shape[0])
        ok = np.flatnonzero(~acc.reshape(acc.shape[0], -1).any(axis=1))
        if ok.size == 0:
            if omitted is not None:
                omitted.append(a)
            continue
        idx = int(ok[0])
        words = []
        for q in range(n - 1, -1, -1):
            words.append(WORDS[idx % 6])
            idx //= 6
        words = tuple(reversed(words))
        circ = CliffordCircuit(n, [g])
        for q, w in enumerate(words):
            circ.gates.extend(word_gates(w, q))
        p = sign_fix(code, circ)
        pstr = "".join("IXZY"[int(p[q]) + 2 * int(p[n + q])] for q in range(n))
        circ.gates.extend(pauli_gates(p, descending=False))
        logical = logical_clifford(code, circ, basis)
        if logical is None:
            raise ArithmeticError("fix-up failed to preserve the signed stabilizer group")
        entries.append(BraidProtocolEntry(a, words, pstr, logical))
    return entries


def entry_from_words(code: StabilizerCode, perm, words, basis=None) -> BraidProtocolEntry | None:
    """Complete a given (permutation, words) witness with its Pauli fix."""
    n = code.n
    circ = CliffordCircuit(n, [perm_gate(perm)])
    for q, w in enumerate(words):
        circ.gates.extend(word_gates(w, q))
    p = sign_fix(code, circ)
    if p is None:
        return None
    pstr = "".join("IXZY"[int(p[q]) + 2 * int(p[n + q])] for q in range(n))
    circ.gates.extend(pauli_gates(p, descending=False))
    if basis is not None:
        basis = [pauli_parse(b) if isinstance(b, str) else b for b in basis]
    return BraidProtocolEntry(tuple(perm), tuple(words), pstr, logical_clifford(code, circ, basis))


def verify_entry_tableau(code: StabilizerCode, entry: BraidProtocolEntry, basis=None) -> bool:
    """Encode, apply the entry, decode, and compare with the logical gate
    applied to the bare logical wires, for a spanning set of input states."""
    n, m, k = code.n, code.m, code.k
    basis = basis if basis is not None else code.logical_basis
    enc = encoder_circuit(code, basis)
    dec = enc.inverse()
    bare = synthesize(entry.logical)
    bare_wide = [Gate(g.name, tuple(q + m for q in g.qubits)) for g in bare.gates]
    for inputs in itertools.product(("0", "+", "i"), repeat=k):
        prep = []
        for j, s in enumerate(inputs):
            if s != "0":
                prep.append(Gate("H", (m + j,)))
            if s == "i":
                prep.append(Gate("S", (m + j,)))
        ta, tb = Tableau(n), Tableau(n)
        for g in prep + enc.gates + entry.circuit().gates + dec.gates:
            ta.apply(g)
        for g in prep + bare_wide:
            tb.apply(g)
        if not same_state(ta, tb):
            return False
    return True


# ------------------------------------------------------ doubled logicals

def doubled_logicals(base_basis) -> list[SymplecticVector]:
    """Logical basis of the doubled code from a base basis (X1, Z1, ...).

    Base pair j gives doubled qubits 2j = (Xl(Xj), Zl(Zj)) and
    2j+1 = (Xl(Zj), Zl(Xj)), where Xl(P) puts X on i for x_i and on i+n for
    z_i, and Zl(P) puts Z on i for z_i and on i+n for x_i.
    """
    rows = _basis_rows(base_basis)
    n = rows.shape[1] // 2
    z = np.zeros(2 * n, np.uint8)

    def xl(p):
        return SymplecticVector(np.concatenate([p[:n], p[n:], z]))

    def zl(p):
        return SymplecticVector(np.concatenate([z, p[n:], p[:n]]))

    out = []
    for j in range(rows.shape[0] // 2):
        xj, zj = rows[2 * j], rows[2 * j + 1]
        out += [xl(xj), zl(zj), xl(zj), zl(xj)]
    return out


LIFTED_WORDS = {
    "I": (),
    "S": (("CX", 0, 1),),
    "H": (("SWAP",),),
    "HSH": (("CX", 1, 0),),
    "SH": (("SWAP",), ("CX", 0, 1)),
    "HS": (("CX", 0, 1), ("SWAP",)),
}


def lifted_word_gates(word: str, i: int, n: int) -> list[Gate]:
    """Lift of a one-qubit word on base qubit ``i`` to the fiber {i, i+n}.

    The swap is a relabelling (``PERM``); the lift of HSH is CX(i+n, i).
    """
    out = []
    fib = (i, i + n)
    for step in LIFTED_WORDS[word]:
        if step[0] == "SWAP":
            perm = list(range(2 * n))
            perm[i], perm[i + n] = i + n, i
            out.append(Gate("PERM", (), tuple(perm)))
        else:
            out.append(Gate("CX", (fib[step[1]], fib[step[2]])))
    return out


def lifted_protocol_circuit(n: int, perm=None, words=(), order=None) -> CliffordCircuit:
    """Lift of ``perm`` followed by per-qubit words, qubits visited in ``order``."""
    circ = CliffordCircuit(2 * n)
    if perm is not None and list(perm) != list(range(1, n + 1)):
        g = perm_gate(perm)
        circ.gates.append(Gate("PERM", (), tuple(g.perm) + tuple(p + n for p in g.perm)))
    for q in (order if order is not None else range(n)):
        circ.gates.extend(lifted_word_gates(words[q], q, n))
    return circ


# ------------------------------------------------------------ benchmarks

def five_qubit_code() -> StabilizerCode:
    return code_from_paulis(["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])


BASE_BASIS_412 = ("XIIZ", "ZXII")
BASE_BASIS_513 = ("XZIIZ", "ZZZZZ")


@dataclass
class BenchmarkSpec:
    name: str
    code: StabilizerCode
    basis: list[SymplecticVector]        # X1, Z1, X2, Z2, ...
    prep_zero: CliffordCircuit           # logical |0...0>
    prep_plus: CliffordCircuit           # logical |+...+>
    gate: CliffordCircuit
    gate_label: str = "g"
    jobs: list[tuple[str, str]] = field(default_factory=list)  # (op, state)
    mode: str = "postselect"             # or "lookup"
    shots: int = 5000
    noise: NoiseModel = field(default_factory=NoiseModel)
    layout: str = "staged"               # or "compact"

    def __post_init__(self):
        if self.mode not in ("postselect", "lookup"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for c in (self.prep_zero, self.prep_plus, self.gate):
            if c.n != self.code.n:
                raise ValueError("circuit width differs from the code length")

    @property
    def k(self) -> int:
        return len(self.basis) // 2

    @property
    def gate_logical(self) -> SymplecticClifford:
        op = logical_clifford(self.code, self.gate, self.basis)
        if op is None:
            raise ValueError("benchmark gate does not preserve the code")
        return op


def default_jobs(label: str, k: int = 2) -> list[tuple[str, str]]:
    spam = [("I", "0" * k), ("I", "1" * k), ("I", "+" * k), ("I", "-" * k)]
    states = ["".join(s) for s in itertools.product("01", repeat=k)] + ["".join(s) for s in itertools.product("+-", repeat=k)]
    return spam + [(label, s) for s in states]


def bench_822(noise: NoiseModel | None = None, shots: int = 5000, ft_prep: bool = False) -> BenchmarkSpec:
    """Logical CX on [[8,2,2]]: the lift of the S-bar braid protocol.

    ``ft_prep`` swaps the reference |00> preparation (which has single CX
    faults leading to undetected logical flips) for a searched one without.
    """
    from .genon import tetra_412

    code = double_code(tetra_412().code)
    basis = doubled_logicals(BASE_BASIS_412)
    perm, words, _ = BRAID_TABLE_412[2]  # (1,3,2,4), logical S
    gate = lifted_protocol_circuit(4, perm, words)
    plus = css_prep(code, np.concatenate([code.hx, np.stack([b.x_part for b in basis[0::2]])]))
    zero = PREP_822_00.copy()
    if ft_prep:
        zero = fault_tolerant_css_prep(code, code.hx, np.stack([b.z_part for b in basis[1::2]]))
    return BenchmarkSpec("822", code, basis, zero, plus, gate, "CX",
                         default_jobs("CX"), "postselect", shots, noise or NoiseModel(), "compact")


def bench_1023(noise: NoiseModel | None = None, shots: int = 5000, mode: str = "lookup") -> BenchmarkSpec:
    """Lift of transversal SH on [[5,1,3]] acting on [[10,2,3]]."""
    code = double_code(five_qubit_code())
    basis = doubled_logicals(BASE_BASIS_513)
    gate = lifted_protocol_circuit(5, None, ("SH",) * 5, order=range(4, -1, -1))
    zero = css_prep(code, code.hx)
    return BenchmarkSpec("1023", code, basis, zero, PREP_1023_PP.copy(), gate, "g",
                         default_jobs("g"), mode, shots, noise or NoiseModel(), "staged")


def _basis_kind(state: str) -> str:
    if set(state) <= set("01"):
        return "Z"
    if set(state) <= set("+-"):
        return "X"
    raise ValueError(f"state {state!r} mixes bases")


def ideal_output(logical: SymplecticClifford | None, state: str) -> str:
    """Output basis state of ``logical`` on a logical basis state."""
    k = len(state)
    kind = _basis_kind(state)
    bits = np.array([c in "1-" for c in state], np.uint8)
    if logical is None:
        return state
    rows = np.zeros((k, 2 * k), np.uint8)
    off = k if kind == "Z" else 0
    rows[np.arange(k), off + np.arange(k)] = 1
    imgs, sg = logical.conjugate_rows(rows, bits)
    other = imgs[:, :k] if kind == "Z" else imgs[:, k:]
    if other.any():
        raise ValueError("gate does not map basis states to basis states")
    out = gf2.solve(imgs[:, off:off + k], sg)
    sym = "01" if kind == "Z" else "+-"
    return "".join(sym[int(b)] for b in out)


def _logical_pauli(spec: BenchmarkSpec, state: str) -> list[Gate]:
    """Gates taking the all-0 (or all-+) logical state to ``state``."""
    out = []
    kind = _basis_kind(state)
    for j in range(len(state) - 1, -1, -1):
        if state[j] in "1-":
            op = spec.basis[2 * j] if kind == "Z" else spec.basis[2 * j + 1]
            out.extend(pauli_gates(op))
    return out


@dataclass
class BenchmarkCircuit:
    op: str
    state: str
    circuit: CliffordCircuit
    measured: list[int]      # circuit qubit in each record slot
    kind: str                # "Z" or "X"
    expected: str            # ideal logical output before the undo Paulis


def benchmark_circuit(spec: BenchmarkSpec, op: str, state: str) -> BenchmarkCircuit:
    """Prep, optional gate, undo to the all-0/all-+ state, measure."""
    n = spec.code.n
    kind = _basis_kind(state)
    staged = spec.layout == "staged"
    circ = CliffordCircuit(n)
    for q in range(n):
        circ.append("RESET", q)
    circ.extend(spec.prep_zero if kind == "Z" else spec.prep_plus)
    if staged:
        circ.append("BARRIER")
    circ.gates.extend(_logical_pauli(spec, state))
    circ.append("BARRIER")
    logical = None
    if op != "I":
        circ.extend(spec.gate)
        logical = spec.gate_logical
    circ.append("BARRIER")
    out = ideal_output(logical, state)
    circ.gates.extend(_logical_pauli(spec, out))
    if kind == "X":
        if staged:
            circ.append("BARRIER")
        for v in range(n - 1, -1, -1):
            circ.append("H", v)
    measured = measure_all(circ)
    return BenchmarkCircuit(op, state, circ, measured, kind, out)


def analyse(spec: BenchmarkSpec, bc: BenchmarkCircuit, records: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-shot (syndrome bits, logical bits) from measurement records.

    After the undo Paulis the ideal logical bits are all zero.
    """
    n = spec.code.n
    out = np.zeros((records.shape[0], n), np.uint8)
    out[:, bc.measured] = records
    if bc.kind == "Z":
        checks = spec.code.hz
        logic = np.stack([b.z_part for b in spec.basis[1::2]])
    else:
        checks = spec.code.hx
        logic = np.stack([b.x_part for b in spec.basis[0::2]])
    return gf2.matmul(out, checks.T), gf2.matmul(out, logic.T)


@dataclass
class LookupDecoder:
    """Syndrome -> logical flip pattern, trained per circuit."""

    table: dict[tuple[int, ...], tuple[int, ...]]
    k: int

    def correction(self, syndrome) -> tuple[int, ...]:
        return self.table.get(tuple(int(b) for b in syndrome), (0,) * self.k)

    def decode(self, syndromes: np.ndarray, logicals: np.ndarray) -> np.ndarray:
        corr = np.array([self.correction(s) for s in syndromes], np.uint8).reshape(logicals.shape)
        return logicals ^ corr


def train_lookup(syndromes: np.ndarray, flips: np.ndarray) -> LookupDecoder:
    """Most likely flip per observed syndrome; ties go to the smaller tuple."""
    k = flips.shape[1]
    counts: dict[tuple, Counter] = {}
    for s, f in zip(map(tuple, syndromes.tolist()), map(tuple, flips.tolist())):
        counts.setdefault(s, Counter())[f] += 1
    table = {}
    for s, c in counts.items():
        best = max(c.values())
        table[s] = min(f for f, v in c.items() if v == best)
    return LookupDecoder(table, k)


def _job_seed(seed: int, job: int, salt: int = 0) -> int:
    return int(np.random.SeedSequence([seed, job, salt]).generate_state(1)[0])


def build_lookup_decoder(spec: BenchmarkSpec, training_shots: int = 50000) -> dict[tuple[str, str], LookupDecoder]:
    """One decoder per benchmark circuit, trained on simulated shots."""
    out = {}
    for j, (op, state) in enumerate(spec.jobs):
        bc = benchmark_circuit(spec, op, state)
        rec = run(bc.circuit, spec.noise, training_shots, _job_seed(spec.noise.seed, j, 1))
        syn, log = analyse(spec, bc, rec)
        out[(op, state)] = train_lookup(syn, log)
    return out


@dataclass
class BenchmarkRow:
    op: str
    state: str
    shots: int
    discarded: int
    errors: int

    @property
    def accepted(self) -> int:
        return self.shots - self.discarded


def lifted_benchmark(spec: BenchmarkSpec, decoders=None, training_shots: int = 50000) -> list[BenchmarkRow]:
    """Error counts per (operation, state).

    Postselect mode discards shots with a nonzero syndrome; lookup mode
    applies the trained correction and discards nothing. A shot is an error
    when any logical bit differs from its ideal value.
    """
    if spec.mode == "lookup" and decoders is None:
        decoders = build_lookup_decoder(spec, training_shots)
    rows = []
    for j, (op, state) in enumerate(spec.jobs):
        bc = benchmark_circuit(spec, op, state)
        rec = run(bc.circuit, spec.noise, spec.shots, _job_seed(spec.noise.seed, j))
        syn, log = analyse(spec, bc, rec)
        if spec.mode == "postselect":
            keep = ~syn.any(axis=1)
            rows.append(BenchmarkRow(op, state, spec.shots, int((~keep).sum()), int(log[keep].any(axis=1).sum())))
        else:
            fixed = decoders[(op, state)].decode(syn, log)
            rows.append(BenchmarkRow(op, state, spec.shots, 0, int(fixed.any(axis=1).sum())))
    return rows


def rows_to_json(rows: list[BenchmarkRow]) -> str:
    return json.dumps(
        [{"op": r.op, "state": r.state, "shots": r.shots, "discarded": r.discarded, "accepted": r.accepted, "errors": r.errors} for r in rows],
        indent=2,
    )


def rows_to_table(rows: list[BenchmarkRow]) -> str:
    lines = [f"{'op':<4} {'state':<6} {'shots':>7} {'discarded':>9} {'errors':>7}"]
    for r in rows:
        lines.append(f"{r.op:<4} {r.state:<6} {r.shots:>7} {r.discarded:>9} {r.errors:>7}")
    return "\n".join(lines)


# ------------------------------------------------------ fault injection

def _pauli_choices(width: int) -> list[tuple[str, ...]]:
    out = []
    for combo in itertools.product("IXYZ", repeat=width):
        if any(c != "I" for c in combo):
            out.append(combo)
    return out


def fault_locations(bc: BenchmarkCircuit, start: int, stop: int) -> list[list[Gate]]:
    """Single faults: any Pauli on all qubits before gate ``start``, and any
    Pauli on the support of each two-qubit gate in ``[start, stop)`` right
    after it. Each fault is returned as the gate list to insert."""
    out = []
    n = bc.circuit.n
    for q in range(n):
        for p in "XYZ":
            out.append((start, [Gate(p, (q,))]))
    for i in range(start, stop):
        g = bc.circuit.gates[i]
        if not g.unitary or g.name == "PERM":
            continue
        for combo in _pauli_choices(len(g.qubits)):
            out.append((i + 1, [Gate(p, (q,)) for p, q in zip(combo, g.qubits) if p != "I"]))
    return out


def fault_injection(spec: BenchmarkSpec, op: str, state: str) -> tuple[int, int]:
    """Exhaustive single-fault injection around the gate block.

    A lookup decoder is trained on the full set of faulty runs (one run per
    fault), then each run is decoded. Returns (failures, faults).
    """
    bc = benchmark_circuit(spec, op, state)
    gates = bc.circuit.gates
    barriers = [i for i, g in enumerate(gates) if g.name == "BARRIER"]
    # the gate block sits between the last two barriers before measurement
    start, stop = barriers[-2] + 1, barriers[-1]
    if spec.layout == "staged" and bc.kind == "X":
        start, stop = barriers[-3] + 1, barriers[-2]
    faults = fault_locations(bc, start, stop)
    syns, logs = [], []
    for pos, ins in faults:
        circ = CliffordCircuit(bc.circuit.n, gates[:pos] + ins + gates[pos:])
        rec = tableau_run(circ, None, 1, 0)
        s, lg = analyse(spec, bc, rec)
        syns.append(s[0])
        logs.append(lg[0])
    syns, logs = np.array(syns), np.array(logs)
    dec = train_lookup(syns, logs)
    fixed = dec.decode(syns, logs)
    return int(fixed.any(axis=1).sum()), len(faults)


def undetected_weight_one(code: StabilizerCode) -> list[str]:
    """Weight-one Paulis that commute with every check but act nontrivially."""
    out = []
    n = code.n
    for q in range(n):
        for p in "XYZ":
            s = ["I"] * n
            s[q] = p
            v = pauli_parse("".join(s))
            if not code.syndrome(v).any() and not code.contains(v):
                out.append("".join(s))
    return out


# --------------------------------------------------- randomized benchmarking

@dataclass
class RBElement:
    word: tuple[str, ...]              # generator names in time order
    logical: SymplecticClifford        # exact one-qubit action
    circuit: CliffordCircuit           # physical implementation


@dataclass
class RBBundle:
    code: StabilizerCode
    basis: list[SymplecticVector]
    prep: CliffordCircuit
    encoder: CliffordCircuit
    decoder: CliffordCircuit
    generators: dict[str, RBElement]
    elements: list[RBElement]


def rb_bundle_412() -> RBBundle:
    """[[4,1,2]] tetrahedron code with braid-protocol generators H, S and
    logical Paulis X, Z; the 24 one-qubit Cliffords by breadth-first search."""
    from .genon import tetra_412

    code = tetra_412().code
    enc = ENCODER_412
    e = circuit_symplectic(enc)
    n = code.n
    basis = [SymplecticVector(e.images[n - 1]), SymplecticVector(e.images[2 * n - 1])]
    entries = braid_protocol(code, basis)
    gens = {}
    for name in ("H", "S"):
        entry = next(x for x in entries if x.logical_word == name)
        gens[name] = RBElement((name,), entry.logical, entry.circuit())
    for name, vec in (("X", basis[0]), ("Z", basis[1])):
        circ = CliffordCircuit(n, pauli_gates(vec, descending=False))
        gens[name] = RBElement((name,), logical_clifford(code, circ, basis), circ)
    start = RBElement((), SymplecticClifford.identity(1), CliffordCircuit(n))
    seen = {start.logical: start}
    frontier = [start]
    while frontier:
        nxt = []
        for el in frontier:
            for name, g in gens.items():
                op = g.logical.compose(el.logical)
                if op in seen:
                    continue
                new = RBElement(el.word + (name,), op, el.circuit.copy().extend(g.circuit))
                seen[op] = new
                nxt.append(new)
        frontier = nxt
    elements = sorted(seen.values(), key=lambda el: (len(el.word), el.word))
    return RBBundle(code, basis, PREP_412.copy(), enc, DECODE_412.copy(), gens, elements)


def rb_circuit(bundle: RBBundle, sequence) -> CliffordCircuit:
    """Encoded RB circuit for a sequence of element indices.

    The inverse is computed from the decoded action ``W = D U E`` on the
    last wire and applied there before measuring all qubits.
    """
    n = bundle.code.n
    circ = CliffordCircuit(n)
    for q in range(n):
        circ.append("RESET", q)
    circ.extend(bundle.prep)
    circ.append("BARRIER")
    body = CliffordCircuit(n)
    for idx in sequence:
        el = bundle.elements[int(idx)]
        body.extend(el.circuit)
        circ.extend(el.circuit)
        circ.append("BARRIER")
    circ.extend(bundle.decoder)
    w = circuit_symplectic(bundle.decoder).compose(circuit_symplectic(body)).compose(circuit_symplectic(bundle.encoder))
    last = n - 1
    rows = w.images[[last, 2 * n - 1]]
    if rows[:, :last].any():
        raise ArithmeticError("decoded action entangles the logical wire")
    local = SymplecticClifford(rows[:, [last, 2 * n - 1]], w.signs[[last, 2 * n - 1]])
    for g in synthesize(local.inverse()).gates:
        circ.gates.append(Gate(g.name, (last,)))
    return circ


@dataclass
class RBPoint:
    length: int
    shots: int
    discarded: int
    survived: int

    @property
    def accepted(self) -> int:
        return self.shots - self.discarded

    @property
    def survival(self) -> float:
        return self.survived / self.accepted if self.accepted else float("nan")

    @property
    def discard_fraction(self) -> float:
        return self.discarded / self.shots if self.shots else 0.0


def rb_run(bundle: RBBundle | None = None, lengths=(16, 256, 512), circuits_per_length: int = 10,
           shots: int = 100, noise: NoiseModel | None = None) -> list[RBPoint]:
    """Logical randomized benchmarking with postselection on the syndrome.

    Sequence elements are drawn uniformly from the 24 one-qubit Cliffords.
    A shot survives when the logical wire reads 0 and is discarded when any
    syndrome wire reads 1.
    """
    bundle = bundle or rb_bundle_412()
    noise = noise or NoiseModel()
    n = bundle.code.n
    points = []
    job = 0
    for length in lengths:
        disc = surv = 0
        for c in range(circuits_per_length):
            rng = np.random.default_rng([noise.seed, length, c])
            seq = rng.integers(len(bundle.elements), size=length)
            circ = rb_circuit(bundle, seq)
            where = measure_all(circ)
            rec = run(circ, noise, shots, _job_seed(noise.seed, job, 2))
            job += 1
            out = np.zeros((shots, n), np.uint8)
            out[:, where] = rec
            bad = out[:, : n - 1].any(axis=1)
            disc += int(bad.sum())
            surv += int(((out[:, n - 1] == 0) & ~bad).sum())
        points.append(RBPoint(length, shots * circuits_per_length, disc, surv))
    return points


def rb_csv(points: list[RBPoint]) -> str:
    lines = ["length,survival,discards,shots"]
    for p in points:
        lines.append(f"{p.length},{p.survival:.6f},{p.discard_fraction:.6f},{p.shots}")
    return "\n".join(lines) + "\n"
