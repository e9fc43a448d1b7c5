"""The symplectic double of a stabilizer code and its inverse constructions.

Doubled qubit ``i`` and ``i + n`` form the fiber over base qubit ``i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import gf2
from .clifford import CliffordCircuit, circuit_symplectic
from .code import StabilizerCode, code_isomorphic, css_code, css_split, permute_columns
from .pauli import pairing_matrix


class NotCSSError(ValueError):
    pass


# ------------------------------------------------------------------ double

def double_check_matrix(h, n: int | None = None) -> np.ndarray:
    """``((H_X H_Z 0 0), (0 0 H_Z H_X))`` for an isotropic ``(H_X | H_Z)``."""
    h = gf2.as_gf2(h)
    if n is None:
        n = h.shape[1] // 2
    h = h.reshape(-1, 2 * n)
    if pairing_matrix(h, h).any():
        raise ValueError("check matrix is not isotropic")
    hx, hz = h[:, :n], h[:, n:]
    zero = np.zeros_like(h)
    top = np.concatenate([hx, hz, zero], axis=1)
    bot = np.concatenate([zero, hz, hx], axis=1)
    return np.vstack([top, bot])


def double_code(c: StabilizerCode) -> StabilizerCode:
    return StabilizerCode(double_check_matrix(c.checks, c.n), 2 * c.n)


def fiber_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, i + n) for i in range(n)]


# ------------------------------------------------------------- ZX-duality

@dataclass(frozen=True)
class ZXDuality:
    """A qubit permutation exchanging the X and Z check spaces of a CSS code.

    ``perm[i]`` is the image of qubit ``i`` (0-based).
    """

    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def is_involution(self) -> bool:
        return all(self.perm[p] == i for i, p in enumerate(self.perm))

    @property
    def is_fixed_point_free(self) -> bool:
        return all(p != i for i, p in enumerate(self.perm))

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.n):
            if i in seen:
                continue
            cyc = [i]
            j = self.perm[i]
            while j != i:
                cyc.append(j)
                j = self.perm[j]
            seen.update(cyc)
            out.append(tuple(cyc))
        return out

    def to_cycles(self) -> str:
        """Cycle notation with 1-based labels, e.g. ``(1 5)(2 6)``."""
        return "".join("(" + " ".join(str(i + 1) for i in cyc) + ")" for cyc in self.orbits() if len(cyc) > 1) or "()"

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "ZXDuality":
        perm = list(range(n))
        body = text.replace(" ", "")
        if re.fullmatch(r"(\(\d+(,?\d+)*\))*|\(\)", body) is None and not re.fullmatch(r"(\([\d ]+\))*", text.replace(",", " ").strip()):
            raise ValueError(f"bad cycle notation {text!r}")
        for cyc in re.findall(r"\(([^)]*)\)", text):
            items = [int(t) - 1 for t in cyc.replace(",", " ").split()]
            for a, b in zip(items, items[1:] + items[:1]):
                if not 0 <= a < n:
                    raise ValueError(f"label {a + 1} out of range")
                perm[a] = b
        if sorted(perm) != list(range(n)):
            raise ValueError(f"{text!r} is not a permutation")
        return cls(tuple(perm))

    def __str__(self) -> str:
        return self.to_cycles()


def _css_parts(c: StabilizerCode) -> tuple[np.ndarray, np.ndarray]:
    split = css_split(c)
    if split is None:
        raise NotCSSError("code is not CSS")
    return split


def _permute_vec_cols(m: np.ndarray, perm) -> np.ndarray:
    out = np.zeros_like(m)
    out[:, list(perm)] = m
    return out


def is_zx_duality(c: StabilizerCode, perm) -> bool:
    cx, cz = _css_parts(c)
    return gf2.same_rowspan(_permute_vec_cols(cx, perm), cz) and gf2.same_rowspan(_permute_vec_cols(cz, perm), cx)


def _signatures(m: np.ndarray) -> list[tuple]:
    """Per-column weight histogram over the whole row space."""
    r = m.shape[0]
    coeff = ((np.arange(1 << r)[:, None] >> np.arange(r)) & 1).astype(np.uint8)
    elems = gf2.matmul(coeff, m)
    w = elems.sum(axis=1)
    sig = []
    for q in range(m.shape[1]):
        sig.append(tuple(np.bincount(w[elems[:, q] == 1], minlength=m.shape[1] + 1).tolist()))
    return sig


MAX_DUALITY_N = 14


def find_zx_dualities(c: StabilizerCode, fixed_point_free_involutory: bool = True) -> list[ZXDuality]:
    """All permutations tau with tau(C_X) = C_Z and tau(C_Z) = C_X, sorted."""
    cx, cz = _css_parts(c)
    n = c.n
    if n > MAX_DUALITY_N:
        raise ValueError(f"duality search supports n <= {MAX_DUALITY_N}, got {n}")
    if cx.shape[0] != cz.shape[0]:
        return []
    sx, sz = _signatures(cx), _signatures(cz)
    perm = [-1] * n
    used = [False] * n
    found = []

    def ok() -> bool:
        src = [i for i in range(n) if perm[i] >= 0]
        dst = [perm[i] for i in src]
        a = cx[:, src]
        b = cz[:, dst]
        if not gf2.same_rowspan(a, b):
            return False
        return gf2.same_rowspan(cz[:, src], cx[:, dst])

    def search(i: int) -> None:
        while i < n and perm[i] >= 0:
            i += 1
        if i == n:
            found.append(ZXDuality(tuple(perm)))
            return
        for t in range(n):
            if used[t] or sx[i] != sz[t] or sz[i] != sx[t]:
                continue
            if fixed_point_free_involutory:
                if t == i or perm[t] >= 0:
                    continue
                perm[i], perm[t] = t, i
                used[i] = used[t] = True
                if ok():
                    search(i + 1)
                perm[i] = perm[t] = -1
                used[i] = used[t] = False
            else:
                perm[i] = t
                used[t] = True
                if ok():
                    search(i + 1)
                perm[i] = -1
                used[t] = False

    search(0)
    found = [d for d in found if is_zx_duality(c, d.perm)]
    return sorted(found, key=lambda d: d.perm)


# ------------------------------------------------------------------ unwrap

def fiber_alignment(tau: ZXDuality) -> list[int]:
    """Permutation sending orbit j = {a < b} of tau to the fiber {j, j + n}."""
    if not (tau.is_involution and tau.is_fixed_point_free):
        raise ValueError("duality must be a fixed-point-free involution")
    half = tau.n // 2
    align = [0] * tau.n
    for j, (a, b) in enumerate(sorted(tuple(sorted(o)) for o in tau.orbits())):
        align[a] = j
        align[b] = j + half
    return align


def unwrap_with_alignment(c: StabilizerCode, tau: ZXDuality) -> tuple[StabilizerCode, list[int]]:
    """Base code and the qubit permutation carrying ``c`` onto its double."""
    cx, cz = _css_parts(c)
    if tau.n != c.n or not is_zx_duality(c, tau.perm):
        raise ValueError("tau is not a ZX-duality of this code")
    align = fiber_alignment(tau)
    half = c.n // 2
    hx = _permute_vec_cols(cx, align)
    hz = _permute_vec_cols(cz, align)
    # in aligned coordinates tau swaps j and j + n; solve tau(H_Z)^T = H_X^T A
    swap = [j + half for j in range(half)] + list(range(half))
    tau_hz = _permute_vec_cols(hz, swap)
    a = gf2.solve_matrix(hx.T, tau_hz.T)
    if a is None:
        raise ValueError("tau does not carry C_Z onto C_X")
    # A is invertible since tau preserves dimension; A^T H_X = tau(H_Z), so the
    # rows of H_X read as (x | z) already give the base check matrix.
    base = StabilizerCode(hx, half)
    return base, align


def unwrap(c: StabilizerCode, tau: ZXDuality) -> StabilizerCode:
    return unwrap_with_alignment(c, tau)[0]


# --------------------------------------------------------------- [[4,2,2]]

CODE_422_STABILIZERS = ("XXXX", "ZZZZ")
# logical pairs (X1, Z1), (X2, Z2)
CODE_422_LOGICALS = ("XXII", "ZIZI", "XIXI", "ZZII")


def _bits(word: str) -> np.ndarray:
    return np.array([c != "I" for c in word], dtype=np.uint8)


def concat_422(c: StabilizerCode, tau: ZXDuality) -> StabilizerCode:
    """[[4,2,2]] blocks concatenated with ``c`` along the orbits of ``tau``.

    Orbit ``j = {a < b}`` feeds block ``j`` (qubits 4j..4j+3): qubit ``a`` is
    logical 1 and ``b`` logical 2 of that block.
    """
    cx, cz = _css_parts(c)
    if tau.n != c.n or not is_zx_duality(c, tau.perm):
        raise ValueError("tau is not a ZX-duality of this code")
    if not (tau.is_involution and tau.is_fixed_point_free):
        raise ValueError("duality must be a fixed-point-free involution")
    blocks = c.n // 2
    big = 4 * blocks
    orbit = sorted(tuple(sorted(o)) for o in tau.orbits())
    x1, z1, x2, z2 = (_bits(w) for w in CODE_422_LOGICALS)
    xmap = np.zeros((c.n, big), dtype=np.uint8)
    zmap = np.zeros((c.n, big), dtype=np.uint8)
    for j, (a, b) in enumerate(orbit):
        xmap[a, 4 * j : 4 * j + 4] = x1
        zmap[a, 4 * j : 4 * j + 4] = z1
        xmap[b, 4 * j : 4 * j + 4] = x2
        zmap[b, 4 * j : 4 * j + 4] = z2
    hx = [gf2.matmul(cx, xmap)]
    hz = [gf2.matmul(cz, zmap)]
    for j in range(blocks):
        row = np.zeros((1, big), dtype=np.uint8)
        row[0, 4 * j : 4 * j + 4] = 1
        hx.append(row)
        hz.append(row)
    if big == 0:
        return StabilizerCode(np.zeros((0, 0), np.uint8), 0)
    return css_code(np.vstack(hx), np.vstack(hz))


def is_self_dual(c: StabilizerCode) -> bool:
    """CSS with identical X and Z check spaces."""
    split = css_split(c)
    return split is not None and gf2.same_rowspan(*split)


# --------------------------------------------------------------- syndromes

@dataclass(frozen=True)
class BlockFault:
    f_x: np.ndarray
    f_z: np.ndarray

    def __post_init__(self):
        fx = gf2.as_gf2(self.f_x).reshape(-1)
        fz = gf2.as_gf2(self.f_z).reshape(-1)
        if fx.size != fz.size:
            raise ValueError("fault parts differ in length")
        object.__setattr__(self, "f_x", fx)
        object.__setattr__(self, "f_z", fz)

    @property
    def f_y(self) -> np.ndarray:
        return self.f_x & self.f_z


def base_syndrome(c: StabilizerCode, f: BlockFault) -> np.ndarray:
    """``S_f = H_X f_Z + H_Z f_X``."""
    if f.f_x.size != c.n:
        raise ValueError("fault size does not match code")
    return (gf2.matmul(c.hx, f.f_z[:, None]) ^ gf2.matmul(c.hz, f.f_x[:, None]))[:, 0]


def doubled_syndrome_split(dc: StabilizerCode, f_prime) -> tuple[np.ndarray, np.ndarray]:
    """``(S^X, S^Z)`` of a fault on a doubled code given as its (X | Z) bits.

    ``S^X = (H_X H_Z) f'_Z`` comes from the X-type checks and
    ``S^Z = (H_Z H_X) f'_X`` from the Z-type checks.
    """
    bits = gf2.as_gf2(f_prime).reshape(-1)
    two_n = dc.n
    m = dc.m // 2
    top, bot = dc.checks[:m], dc.checks[m:]
    if top[:, two_n:].any() or bot[:, :two_n].any():
        raise ValueError("code is not in doubled block layout")
    s_x = gf2.matmul(top[:, :two_n], bits[two_n:, None])[:, 0]
    s_z = gf2.matmul(bot[:, two_n:], bits[:two_n, None])[:, 0]
    return s_x, s_z


def lift_fault_z(f: BlockFault) -> np.ndarray:
    """The doubled Z-type fault with ``f'_Z = (f_Z, f_X)`` in (X | Z) bits."""
    n = f.f_x.size
    return np.concatenate([np.zeros(2 * n, np.uint8), f.f_z, f.f_x])


def lift_fault_x(f: BlockFault) -> np.ndarray:
    """The doubled X-type fault with ``f'_X = (f_X, f_Z)``."""
    n = f.f_x.size
    return np.concatenate([f.f_x, f.f_z, np.zeros(2 * n, np.uint8)])


# ------------------------------------------------------------------ claims

@dataclass(frozen=True)
class ClaimEvidence:
    """Outcome of checking a claim on one instance: a witness or counterexample."""

    holds: bool
    detail: object = None


def block_swap(c: StabilizerCode) -> StabilizerCode:
    """Exchange the X and Z blocks of every check (transversal Hadamard image)."""
    n = c.n
    return StabilizerCode(np.concatenate([c.checks[:, n:], c.checks[:, :n]], axis=1), n)


def direct_sum(a: StabilizerCode, b: StabilizerCode) -> StabilizerCode:
    n = a.n + b.n
    rows = []
    for row in a.checks:
        rows.append(np.concatenate([row[: a.n], np.zeros(b.n, np.uint8), row[a.n :], np.zeros(b.n, np.uint8)]))
    for row in b.checks:
        rows.append(np.concatenate([np.zeros(a.n, np.uint8), row[: b.n], np.zeros(a.n, np.uint8), row[b.n :]]))
    return StabilizerCode(np.array(rows, dtype=np.uint8).reshape(-1, 2 * n), n)


def claim_double_is_sum(c: StabilizerCode) -> ClaimEvidence:
    """Does ``double(C) ~ C (+) H(C)`` agree with ``C`` being CSS?

    ``H(C)`` is read as the block swap. ``holds`` is True when the
    isomorphism exists exactly for CSS codes; ``detail`` carries the
    permutation (or None) and the CSS flag.
    """
    iso = code_isomorphic(double_code(c), direct_sum(c, block_swap(c)))
    css = css_split(c) is not None
    return ClaimEvidence((iso is not None) == css, {"css": css, "permutation": iso})


def y_parity(c: StabilizerCode) -> np.ndarray:
    """Parity of the number of Y letters in each check row."""
    return (c.hx.astype(int) & c.hz).sum(axis=1) % 2


def fiber_cz_circuit(n: int) -> CliffordCircuit:
    circ = CliffordCircuit(2 * n)
    for i in range(n):
        circ.append("CZ", i, i + n)
    return circ


def claim_fiber_cz(c: StabilizerCode) -> ClaimEvidence:
    """Fiber-transversal CZ preserves double(C) iff every check has even Y parity.

    Preservation is tested on the signed stabilizer group (all checks +);
    modulo signs the fiber CZ always preserves the doubled code. Y parity is linear on an isotropic space, so checking one basis decides
    whether some basis has all rows even.
    """
    dc = double_code(c)
    op = circuit_symplectic(fiber_cz_circuit(c.n))
    imgs, signs = op.conjugate_rows(dc.checks, np.zeros(dc.m, np.uint8))
    preserved = all(dc.signed_member(r, sg) for r, sg in zip(imgs, signs))
    even = not y_parity(c).any()
    return ClaimEvidence(preserved == even, {"preserved": preserved, "even_y": even})


def claim_fixed_point_free_duality(c: StabilizerCode) -> ClaimEvidence:
    """The fiber swap ``i <-> i + n`` is a ZX-duality of ``double(C)``."""
    n = c.n
    perm = [i + n for i in range(n)] + list(range(n))
    return ClaimEvidence(is_zx_duality(double_code(c), perm), ZXDuality(tuple(perm)))


def canonical_fiber_duality(n: int) -> ZXDuality:
    return ZXDuality(tuple([i + n for i in range(n)] + list(range(n))))


def doubled_isomorphic_to(c: StabilizerCode, base: StabilizerCode, align) -> bool:
    """Does ``align`` carry ``c`` onto ``double(base)``?"""
    return StabilizerCode(permute_columns(c.checks, align), c.n).same_space(double_code(base))
