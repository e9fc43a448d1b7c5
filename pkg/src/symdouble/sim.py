"""Stabilizer simulation with Pauli noise.

Two samplers share one event schedule so that their randomness lines up:

* ``tableau_run`` runs an Aaronson-Gottesman tableau (with signs) per shot.
* ``frame_run`` runs one noiseless reference tableau and then propagates Pauli
  frames for all shots at once; it is the fast path for large shot counts.

Each shot draws its uniforms from ``numpy.random.default_rng([seed, shot])``.
Every gate, reset and measurement owns a fixed slot in that stream.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import ONE_QUBIT, TWO_QUBIT, CliffordCircuit, Gate, _phase_exponent, apply_gate_rows

DEFAULT_P1 = 3.2e-5
DEFAULT_P2 = 9.2e-4
DEFAULT_SPAM = 2.7e-3
DEFAULT_SEED = 20240917


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing gate noise plus preparation and measurement flips.

    After a one-qubit gate a uniformly random X, Y or Z happens with
    probability ``p1``; after a two-qubit gate one of the 15 non-identity
    two-qubit Paulis happens with probability ``p2``. Qubit permutations and
    barriers are noiseless.
    """

    p1: float = DEFAULT_P1
    p2: float = DEFAULT_P2
    p_meas: float = DEFAULT_SPAM / 2
    p_prep: float = DEFAULT_SPAM / 2
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        for name in ("p1", "p2", "p_meas", "p_prep"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name}={p} is not a probability")

    @classmethod
    def noiseless(cls, seed: int = DEFAULT_SEED) -> "NoiseModel":
        return cls(0.0, 0.0, 0.0, 0.0, seed)


# ---------------------------------------------------------------- schedule

def _slots(circ: CliffordCircuit) -> tuple[list[int], int]:
    """Offset of each gate's uniforms in the per-shot stream, and the total."""
    offsets = []
    pos = circ.n  # the first n slots randomise the initial Z frame
    for g in circ.gates:
        offsets.append(pos)
        if g.name in ONE_QUBIT or g.name in TWO_QUBIT:
            pos += 1
        elif g.name in ("RESET", "MEASURE"):
            pos += 2
    return offsets, pos


def shot_uniforms(seed: int, shots: int, width: int, first_shot: int = 0) -> np.ndarray:
    out = np.empty((shots, width))
    for s in range(shots):
        out[s] = np.random.default_rng([seed, first_shot + s]).random(width)
    return out


_ONE_Q = np.array([[1, 0], [1, 1], [0, 1]], dtype=np.uint8)  # X, Y, Z as (x, z)
_LET = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=np.uint8)  # I, X, Y, Z


def _one_qubit_error(u, p):
    """(hit mask, x bits, z bits) for depolarizing noise driven by uniforms u."""
    hit = u < p
    idx = np.minimum((u / p * 3).astype(int), 2) if p > 0 else np.zeros(u.shape, int)
    return hit, _ONE_Q[idx, 0] & hit, _ONE_Q[idx, 1] & hit


def _two_qubit_error(u, p):
    hit = u < p
    idx = (np.minimum((u / p * 15).astype(int), 14) + 1) if p > 0 else np.ones(u.shape, int)
    a, b = idx // 4, idx % 4
    return (
        hit,
        _LET[a, 0] & hit, _LET[a, 1] & hit,
        _LET[b, 0] & hit, _LET[b, 1] & hit,
    )


# ----------------------------------------------------------------- tableau

class Tableau:
    """Aaronson-Gottesman tableau: rows 0..n-1 destabilizers, n..2n-1 stabilizers."""

    def __init__(self, n: int):
        self.n = n
        self.x = np.zeros((2 * n, n), dtype=np.uint8)
        self.z = np.zeros((2 * n, n), dtype=np.uint8)
        self.r = np.zeros(2 * n, dtype=np.uint8)
        self.x[:n] = np.eye(n, dtype=np.uint8)
        self.z[n:] = np.eye(n, dtype=np.uint8)

    def apply(self, g: Gate) -> None:
        apply_gate_rows(g, self.x, self.z, self.r)

    def apply_pauli(self, q: int, xb: int, zb: int) -> None:
        # conjugating by a Pauli flips the signs of anticommuting rows
        self.r ^= (self.x[:, q] & zb) ^ (self.z[:, q] & xb)

    def _rowmul(self, targets: np.ndarray, src: int) -> None:
        """Rows ``targets`` become row ``src`` times themselves."""
        if targets.size == 0:
            return
        e = (
            2 * self.r[targets].astype(np.int64)
            + 2 * int(self.r[src])
            + _phase_exponent(self.x[src][None, :], self.z[src][None, :], self.x[targets], self.z[targets])
        ) % 4
        self.r[targets] = (e // 2).astype(np.uint8)
        self.x[targets] ^= self.x[src]
        self.z[targets] ^= self.z[src]

    def is_deterministic(self, q: int) -> bool:
        return not self.x[self.n :, q].any()

    def measure(self, q: int, u: float = 0.0) -> int:
        """Z-basis measurement; ``u`` < 0.5 picks outcome 1 when random."""
        n = self.n
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} is not allocated")
        hits = np.flatnonzero(self.x[n:, q])
        if hits.size:
            p = n + hits[0]
            others = np.flatnonzero(self.x[:, q])
            others = others[others != p]
            self._rowmul(others, p)
            self.x[p - n], self.z[p - n], self.r[p - n] = self.x[p], self.z[p], self.r[p]
            self.x[p] = 0
            self.z[p] = 0
            self.z[p, q] = 1
            outcome = int(u < 0.5)
            self.r[p] = outcome
            return outcome
        # deterministic: multiply the stabilizers paired with destabilizers touching q
        sx = np.zeros(n, dtype=np.uint8)
        sz = np.zeros(n, dtype=np.uint8)
        e = 0
        for i in np.flatnonzero(self.x[:n, q]):
            row = n + i
            e += 2 * int(self.r[row]) + int(_phase_exponent(self.x[row][None], self.z[row][None], sx[None], sz[None])[0])
            sx ^= self.x[row]
            sz ^= self.z[row]
        return (e % 4) // 2

    def reset(self, q: int, u: float = 0.0) -> None:
        if self.measure(q, u):
            self.apply_pauli(q, 1, 0)

    def stabilizers(self) -> tuple[np.ndarray, np.ndarray]:
        """Stabilizer rows in (X | Z) form and their signs."""
        n = self.n
        return np.concatenate([self.x[n:], self.z[n:]], axis=1), self.r[n:].copy()


def _measure_count(circ: CliffordCircuit) -> int:
    return sum(1 for g in circ.gates if g.name == "MEASURE")


def _check_qubits(circ: CliffordCircuit) -> None:
    for g in circ.gates:
        for q in g.qubits:
            if not 0 <= q < circ.n:
                raise IndexError(f"{g.name} touches unallocated qubit {q}")


def run_tableau_shot(circ: CliffordCircuit, noise: NoiseModel | None, u: np.ndarray, tab: Tableau | None = None):
    """One shot driven by a row of uniforms; returns (record, final tableau)."""
    tab = Tableau(circ.n) if tab is None else tab
    offsets, _ = _slots(circ)
    record = []
    for g, off in zip(circ.gates, offsets):
        name = g.name
        if name == "MEASURE":
            bit = tab.measure(g.qubits[0], u[off])
            if noise is not None and u[off + 1] < noise.p_meas:
                bit ^= 1
            record.append(bit)
        elif name == "RESET":
            q = g.qubits[0]
            tab.reset(q, u[off])
            if noise is not None and u[off + 1] < noise.p_prep:
                tab.apply_pauli(q, 1, 0)
        else:
            tab.apply(g)
            if noise is None:
                continue
            if name in ONE_QUBIT:
                hit, ex, ez = _one_qubit_error(u[off : off + 1], noise.p1)
                if hit[0]:
                    tab.apply_pauli(g.qubits[0], int(ex[0]), int(ez[0]))
            elif name in TWO_QUBIT:
                hit, ax, az, bx, bz = _two_qubit_error(u[off : off + 1], noise.p2)
                if hit[0]:
                    tab.apply_pauli(g.qubits[0], int(ax[0]), int(az[0]))
                    tab.apply_pauli(g.qubits[1], int(bx[0]), int(bz[0]))
    return np.array(record, dtype=np.uint8), tab


def tableau_run(circ: CliffordCircuit, noise: NoiseModel | None = None, shots: int = 1, seed: int | None = None) -> np.ndarray:
    """Measurement records, one row per shot, from exact per-shot simulation."""
    _check_qubits(circ)
    if seed is None:
        seed = noise.seed if noise is not None else DEFAULT_SEED
    _, width = _slots(circ)
    out = np.zeros((shots, _measure_count(circ)), dtype=np.uint8)
    for s in range(shots):
        u = np.random.default_rng([seed, s]).random(width)
        out[s], _ = run_tableau_shot(circ, noise, u)
    return out


def frame_run(circ: CliffordCircuit, noise: NoiseModel | None = None, shots: int = 1, seed: int | None = None, batch: int = 20000) -> np.ndarray:
    """Same distribution as ``tableau_run`` via Pauli-frame propagation."""
    _check_qubits(circ)
    if seed is None:
        seed = noise.seed if noise is not None else DEFAULT_SEED
    offsets, width = _slots(circ)
    ref, _ = run_tableau_shot(circ, None, np.random.default_rng([seed, -1 & 0xFFFFFFFF]).random(width))
    out = np.zeros((shots, ref.size), dtype=np.uint8)
    n = circ.n
    for start in range(0, shots, batch):
        count = min(batch, shots - start)
        u = shot_uniforms(seed, count, width, start)
        fx = np.zeros((count, n), dtype=np.uint8)
        fz = (u[:, :n] < 0.5).astype(np.uint8)
        col = 0
        for g, off in zip(circ.gates, offsets):
            name = g.name
            if name == "MEASURE":
                q = g.qubits[0]
                bits = ref[col] ^ fx[:, q]
                if noise is not None:
                    bits ^= (u[:, off + 1] < noise.p_meas).astype(np.uint8)
                out[start : start + count, col] = bits
                fz[:, q] ^= (u[:, off] < 0.5).astype(np.uint8)
                col += 1
            elif name == "RESET":
                q = g.qubits[0]
                fx[:, q] = 0
                fz[:, q] = (u[:, off] < 0.5).astype(np.uint8)
                if noise is not None:
                    fx[:, q] ^= (u[:, off + 1] < noise.p_prep).astype(np.uint8)
            else:
                apply_gate_rows(g, fx, fz, None)
                if noise is None:
                    continue
                if name in ONE_QUBIT and noise.p1 > 0:
                    _, ex, ez = _one_qubit_error(u[:, off], noise.p1)
                    fx[:, g.qubits[0]] ^= ex
                    fz[:, g.qubits[0]] ^= ez
                elif name in TWO_QUBIT and noise.p2 > 0:
                    _, ax, az, bx, bz = _two_qubit_error(u[:, off], noise.p2)
                    a, b = g.qubits
                    fx[:, a] ^= ax
                    fz[:, a] ^= az
                    fx[:, b] ^= bx
                    fz[:, b] ^= bz
    return out


def run(circ: CliffordCircuit, noise: NoiseModel | None = None, shots: int = 1, seed: int | None = None, method: str = "auto") -> np.ndarray:
    """Dispatch to the exact tableau for few shots and to frames otherwise."""
    if method == "auto":
        method = "tableau" if shots <= 64 else "frame"
    if method == "tableau":
        return tableau_run(circ, noise, shots, seed)
    if method == "frame":
        return frame_run(circ, noise, shots, seed)
    raise ValueError(f"unknown method {method!r}")
