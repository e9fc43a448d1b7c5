"""Genon graphs (rotation systems), genon codes, domain walls and double covers.

A graph is a set of darts (half-edges). ``sigma`` gives the next dart
counter-clockwise around the same vertex and ``alpha`` pairs the two darts of
an edge. Faces are the orbits of ``sigma . alpha``.

Each dart ``d`` also names a corner: the sector at ``vertex_of[d]`` running
counter-clockwise from ``sigma^-1(d)`` to ``d``. This corner belongs to the
face containing ``d``. Decorations (Pauli letters) live on corners.

Dart ``d`` doubles as the edge-face flag "edge of ``d``, on the side of the
face containing ``d``"; string operators are vectors over these flags.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf2
from .code import StabilizerCode
from .pauli import paulis_to_matrix

LETTERS = "XYZ"
_BITS = {"X": (1, 0), "Y": (1, 1), "Z": (0, 1), "I": (0, 0)}


def _letter_of_bits(x: int, z: int) -> str:
    return {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(x, z)]


class GraphError(ValueError):
    pass


class GenonGraph:
    def __init__(self, vertex_of, sigma, alpha):
        self.vertex_of = np.asarray(vertex_of, dtype=int)
        self.sigma = np.asarray(sigma, dtype=int)
        self.alpha = np.asarray(alpha, dtype=int)
        nd = self.vertex_of.size
        if self.sigma.size != nd or self.alpha.size != nd:
            raise GraphError("dart arrays differ in length")
        if sorted(self.sigma.tolist()) != list(range(nd)) or sorted(self.alpha.tolist()) != list(range(nd)):
            raise GraphError("sigma and alpha must be permutations of the darts")
        if np.any(self.alpha[self.alpha] != np.arange(nd)) or np.any(self.alpha == np.arange(nd)):
            raise GraphError("alpha must be a fixed-point-free involution")
        if np.any(self.vertex_of[self.sigma] != self.vertex_of):
            raise GraphError("sigma must stay at the same vertex")
        self.num_vertices = int(self.vertex_of.max()) + 1 if nd else 0
        self.rotation = []
        for v in range(self.num_vertices):
            darts = np.flatnonzero(self.vertex_of == v)
            if darts.size == 0:
                raise GraphError(f"vertex {v} has no darts")
            cyc = [int(darts.min())]
            while True:
                nxt = int(self.sigma[cyc[-1]])
                if nxt == cyc[0]:
                    break
                cyc.append(nxt)
            if len(cyc) != darts.size:
                raise GraphError(f"rotation at vertex {v} is not a single cycle")
            if len(cyc) not in (3, 4):
                raise GraphError(f"vertex {v} has valence {len(cyc)}; genon graphs need 3 or 4")
            self.rotation.append(cyc)
        self.face_of = np.full(nd, -1, dtype=int)
        self.faces: list[list[int]] = []
        for d in range(nd):
            if self.face_of[d] >= 0:
                continue
            orbit = [d]
            self.face_of[d] = len(self.faces)
            nxt = int(self.sigma[self.alpha[d]])
            while nxt != d:
                orbit.append(nxt)
                self.face_of[nxt] = len(self.faces)
                nxt = int(self.sigma[self.alpha[nxt]])
            if len(orbit) < 2:
                raise GraphError(f"monogon face through dart {d}")
            self.faces.append(orbit)

    # ---- constructors

    @classmethod
    def from_faces(cls, faces) -> "GenonGraph":
        """Build from oriented vertex cycles, one per face (no parallel edges).

        Each face lists its vertices in the order they are met when walking
        the boundary; every directed edge must occur in exactly one face.
        """
        faces = [list(f) for f in faces]
        side = {}
        for fi, f in enumerate(faces):
            for j, u in enumerate(f):
                v = f[(j + 1) % len(f)]
                if (u, v) in side:
                    raise GraphError(f"directed edge {u}->{v} appears twice")
                side[(u, v)] = (fi, j)
        for (u, v) in side:
            if (v, u) not in side:
                raise GraphError(f"edge {u}-{v} has only one side")
        darts = {}
        vertex_of = []
        for (u, v) in sorted(side):
            darts[(u, v)] = len(vertex_of)
            vertex_of.append(u)
        nd = len(vertex_of)
        alpha = [0] * nd
        sigma = [0] * nd
        for (u, v), d in darts.items():
            alpha[d] = darts[(v, u)]
        # walking a face u -> v -> w, the dart (v, w) follows alpha(u, v) = (v, u)
        for fi, f in enumerate(faces):
            for j, u in enumerate(f):
                v = f[(j + 1) % len(f)]
                w = f[(j + 2) % len(f)]
                sigma[darts[(v, u)]] = darts[(v, w)]
        return cls(vertex_of, sigma, alpha)

    @classmethod
    def from_rotation(cls, rotation, pairing) -> "GenonGraph":
        """Per-vertex cyclic dart lists plus a list of paired darts."""
        nd = sum(len(r) for r in rotation)
        vertex_of = [0] * nd
        sigma = [0] * nd
        for v, cyc in enumerate(rotation):
            for j, d in enumerate(cyc):
                vertex_of[d] = v
                sigma[d] = cyc[(j + 1) % len(cyc)]
        alpha = [0] * nd
        for a, b in pairing:
            alpha[a], alpha[b] = b, a
        return cls(vertex_of, sigma, alpha)

    # ---- counts

    @property
    def num_darts(self) -> int:
        return self.vertex_of.size

    @property
    def V(self) -> int:
        return self.num_vertices

    @property
    def E(self) -> int:
        return self.num_darts // 2

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def chi(self) -> int:
        return self.V - self.E + self.F

    @property
    def genus(self) -> int:
        if self.chi % 2 or self.chi > 2:
            raise GraphError(f"Euler characteristic {self.chi} is not that of a closed connected orientable surface")
        return (2 - self.chi) // 2

    def valence(self, v: int) -> int:
        return len(self.rotation[v])

    @property
    def trivalent(self) -> list[int]:
        return [v for v in range(self.V) if self.valence(v) == 3]

    def face_neighbors(self, f: int) -> list[int]:
        return [int(self.face_of[self.alpha[d]]) for d in self.faces[f]]

    @cached_property
    def bicolouring(self) -> list[int] | None:
        """A proper 2-colouring of the faces (adjacent across edges), if any."""
        colour = [-1] * self.F
        for start in range(self.F):
            if colour[start] >= 0:
                continue
            colour[start] = 0
            stack = [start]
            while stack:
                f = stack.pop()
                for g in self.face_neighbors(f):
                    if colour[g] < 0:
                        colour[g] = 1 - colour[f]
                        stack.append(g)
                    elif colour[g] == colour[f]:
                        return None
        return colour

    @property
    def is_bicolourable(self) -> bool:
        return self.bicolouring is not None

    def corner_flags(self, d: int) -> tuple[int, int]:
        """The two edge-face flags meeting at the corner of dart ``d``."""
        prev = int(np.flatnonzero(self.sigma == d)[0])
        return d, int(self.alpha[prev])

    # ---- text format

    def to_text(self, letters=None) -> str:
        lines = [f"{self.V}"]
        for cyc in self.rotation:
            lines.append(" ".join(map(str, cyc)))
        pairs = sorted({tuple(sorted((d, int(self.alpha[d])))) for d in range(self.num_darts)})
        lines.append(" ".join(f"{a}-{b}" for a, b in pairs))
        if letters is not None:
            lines.append("".join(letters))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> tuple["GenonGraph", str | None]:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        nv = int(lines[0])
        rotation = [[int(t) for t in lines[1 + v].split()] for v in range(nv)]
        pairing = [tuple(int(t) for t in p.split("-")) for p in lines[1 + nv].split()]
        letters = lines[2 + nv] if len(lines) > 2 + nv else None
        return cls.from_rotation(rotation, pairing), letters

    def __repr__(self) -> str:
        return f"GenonGraph(V={self.V}, E={self.E}, F={self.F}, genus={self.genus})"


# ------------------------------------------------------------ genon codes

class ConfigurationError(ValueError):
    pass


def check_vertex(letters: list[str]) -> bool:
    """Is this cyclic list of corner letters an allowed vertex configuration?"""
    if len(letters) == 3:
        return sorted(letters) == ["X", "Y", "Z"]
    if len(letters) == 4:
        a, b, c, d = letters
        return a == c and b == d and a != b and a in LETTERS and b in LETTERS
    return False


# Domain-wall rule for an edge seen as two sides, each the pair of letters of
# one adjacent face at the two endpoints. A side reading XX or ZZ never has a
# wall and a side reading XZ or ZX always has one. The remaining cases have a
# side (p, Y) facing (Y, q) with p, q in {X, Z}; these three entries are the
# unique values compatible with even wall parity at every face.
_WALL_Y = {("X", "X"): 1, ("X", "Z"): 0, ("Z", "X"): 0, ("Z", "Z"): 1}


def edge_wall(side_a: tuple[str, str], side_b: tuple[str, str]) -> int:
    for s in (side_a, side_b):
        if s in (("X", "X"), ("Z", "Z")):
            return 0
        if s in (("X", "Z"), ("Z", "X")):
            return 1
    for a, b in ((side_a, side_b), (side_b, side_a), (side_a[::-1], side_b[::-1]), (side_b[::-1], side_a[::-1])):
        if a[1] == "Y" and b[0] == "Y" and a[0] != "Y" and b[1] != "Y":
            return _WALL_Y[(a[0], b[1])]
    raise ConfigurationError(f"no wall rule for sides {side_a} / {side_b}")


@dataclass
class DomainWalls:
    edges: list[int]  # one representative dart per edge carrying a wall
    genons: list[int]  # darts whose corner is a Y at a trivalent vertex
    face_parity: list[int] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.genons)


class GenonCode:
    """A genon graph with one Pauli letter per corner."""

    def __init__(self, graph: GenonGraph, letters):
        letters = list(letters)
        if len(letters) != graph.num_darts:
            raise ConfigurationError(f"expected {graph.num_darts} corner letters, got {len(letters)}")
        for v, cyc in enumerate(graph.rotation):
            if not check_vertex([letters[d] for d in cyc]):
                raise ConfigurationError(
                    f"vertex {v} has disallowed configuration {''.join(letters[d] for d in cyc)}"
                )
        self.graph = graph
        self.letters = letters

    @cached_property
    def face_rows(self) -> np.ndarray:
        g = self.graph
        n = g.V
        rows = np.zeros((g.F, 2 * n), dtype=np.uint8)
        for f, darts in enumerate(g.faces):
            for d in darts:
                v = int(g.vertex_of[d])
                x, z = _BITS[self.letters[d]]
                rows[f, v] ^= x
                rows[f, n + v] ^= z
        return rows

    @cached_property
    def code(self) -> StabilizerCode:
        return StabilizerCode(self.face_rows, self.graph.V)

    def face_pauli(self, f: int) -> str:
        n = self.graph.V
        r = self.face_rows[f]
        return "".join(_letter_of_bits(int(r[i]), int(r[n + i])) for i in range(n))

    @property
    def is_clean(self) -> bool:
        g = self.graph
        return all(self.letters[d] != "Y" for v in range(g.V) if g.valence(v) == 4 for d in g.rotation[v])

    def sides(self, d: int) -> tuple[tuple[str, str], tuple[str, str]]:
        """Letters of the two faces along the edge of dart ``d`` (from u to v)."""
        g = self.graph
        e = int(g.alpha[d])
        a = (self.letters[d], self.letters[int(g.sigma[e])])
        b = (self.letters[int(g.sigma[d])], self.letters[e])
        return a, b

    @cached_property
    def walls(self) -> DomainWalls:
        g = self.graph
        edges = []
        parity = [0] * g.F
        for d in range(g.num_darts):
            e = int(g.alpha[d])
            if d > e:
                continue
            if edge_wall(*self.sides(d)):
                edges.append(d)
                parity[g.face_of[d]] ^= 1
                parity[g.face_of[e]] ^= 1
        genons = [d for v in g.trivalent for d in g.rotation[v] if self.letters[d] == "Y"]
        for d in genons:
            parity[g.face_of[d]] ^= 1
        return DomainWalls(edges, genons, parity)

    def crosses_wall(self, d: int) -> bool:
        return edge_wall(*self.sides(d)) == 1

    def __repr__(self) -> str:
        return f"GenonCode({self.graph!r}, faces={[self.face_pauli(f) for f in range(self.graph.F)]})"


def place_code(graph: GenonGraph, decoration) -> GenonCode:
    """Decorate ``graph``; ``decoration`` is a letter per dart or a dict
    ``{(face, vertex): letter}`` for faces that visit each vertex once."""
    if isinstance(decoration, dict):
        letters = []
        for d in range(graph.num_darts):
            key = (int(graph.face_of[d]), int(graph.vertex_of[d]))
            if key not in decoration:
                raise ConfigurationError(f"no letter for face {key[0]} at vertex {key[1]}")
            letters.append(decoration[key])
        decoration = letters
    return GenonCode(graph, decoration)


def domain_walls(gc: GenonCode) -> DomainWalls:
    return gc.walls


def vertex_configurations(valence: int) -> list[tuple[str, ...]]:
    if valence == 3:
        return [tuple(p) for p in itertools.permutations(LETTERS)]
    return [(a, b, a, b) for a in LETTERS for b in LETTERS if a != b]


def enumerate_codes(graph: GenonGraph):
    """Yield every valid decoration of ``graph`` (6 per vertex)."""
    choices = [vertex_configurations(graph.valence(v)) for v in range(graph.V)]
    for combo in itertools.product(*choices):
        letters = [""] * graph.num_darts
        for v, conf in enumerate(combo):
            for d, c in zip(graph.rotation[v], conf):
                letters[d] = c
        yield GenonCode(graph, letters)


def count_codes(graph: GenonGraph) -> int:
    return int(np.prod([len(vertex_configurations(graph.valence(v))) for v in range(graph.V)]))


def local_clifford_between(a: GenonCode, b: GenonCode) -> list[dict[str, str]] | None:
    """Per-vertex letter permutations (local Cliffords mod Pauli) taking a to b."""
    if a.graph is not b.graph:
        raise ValueError("codes live on different graphs")
    out = []
    for v, cyc in enumerate(a.graph.rotation):
        for perm in itertools.permutations(LETTERS):
            m = dict(zip(LETTERS, perm))
            if all(m[a.letters[d]] == b.letters[d] for d in cyc):
                out.append(m)
                break
        else:
            return None
    return out


def apply_local_clifford(gc: GenonCode, v: int, mapping: dict[str, str]) -> GenonCode:
    letters = list(gc.letters)
    for d in gc.graph.rotation[v]:
        letters[d] = mapping[letters[d]]
    return GenonCode(gc.graph, letters)


def expected_k(gc: GenonCode) -> int:
    g = gc.graph
    if g.is_bicolourable:
        return 2 * g.genus
    return 2 * g.genus + gc.walls.m // 2 - 1


# -------------------------------------------------------- string operators

def string_constraints(graph: GenonGraph) -> np.ndarray:
    """Rows are the local linear constraints cutting out S in F2^{2E}."""
    rows = []
    for v, cyc in enumerate(graph.rotation):
        corners = [graph.corner_flags(d) for d in cyc]
        if len(cyc) == 3:
            r = np.zeros(graph.num_darts, np.uint8)
            for c in corners:
                for f in c:
                    r[f] ^= 1
            rows.append(r)
        else:
            for start in (0, 1):
                r = np.zeros(graph.num_darts, np.uint8)
                for j in (start, start + 2):
                    for f in corners[j]:
                        r[f] ^= 1
                rows.append(r)
    return np.array(rows, dtype=np.uint8).reshape(-1, graph.num_darts)


def string_space(graph: GenonGraph) -> np.ndarray:
    """Basis of the string-operator space S (rows over the 2E flags)."""
    if graph.num_darts == 0:
        return np.zeros((0, 0), np.uint8)
    return gf2.kernel(string_constraints(graph))


def in_string_space(graph: GenonGraph, s) -> bool:
    s = gf2.as_gf2(s).reshape(-1)
    return not gf2.matmul(string_constraints(graph), s[:, None]).any()


def internal_string(graph: GenonGraph, f: int) -> np.ndarray:
    s = np.zeros(graph.num_darts, np.uint8)
    s[graph.faces[f]] ^= 1
    return s


def external_string(graph: GenonGraph, f: int) -> np.ndarray:
    s = np.zeros(graph.num_darts, np.uint8)
    for d in graph.faces[f]:
        s[graph.alpha[d]] ^= 1
    return s


def phi_matrix(gc: GenonCode) -> np.ndarray:
    """Matrix of the flag-to-Pauli map (rows: flags, columns: (x | z) bits).

    At a trivalent vertex a flag in a corner contributes that corner's
    letter. At a 4-valent vertex with corners c0..c3 (rotation order from
    the first dart) flags in c0 contribute the letter of c1, flags in c1
    the letter of c0, and flags in c2, c3 nothing; on S this choice does not
    depend on the starting corner.
    """
    g = gc.graph
    n = g.V
    phi = np.zeros((g.num_darts, 2 * n), dtype=np.uint8)
    for v, cyc in enumerate(g.rotation):
        if len(cyc) == 3:
            values = [gc.letters[d] for d in cyc]
        else:
            values = [gc.letters[cyc[1]], gc.letters[cyc[0]], "I", "I"]
        for d, val in zip(cyc, values):
            x, z = _BITS[val]
            for flag in g.corner_flags(d):
                phi[flag, v] ^= x
                phi[flag, n + v] ^= z
    return phi


def string_to_logical(gc: GenonCode, s) -> np.ndarray:
    s = gf2.as_gf2(s).reshape(-1)
    if not in_string_space(gc.graph, s):
        raise ValueError("vector is not a string operator")
    return gf2.matmul(s[None, :], phi_matrix(gc))[0]


# ------------------------------------------------------------ double cover

@dataclass
class DoubleCover:
    graph: GenonGraph
    code: GenonCode | None
    projection: list[int]  # cover vertex -> base vertex
    sheet: list[int]  # cover vertex -> 0 or 1
    fiber_map: list[int] | None  # cover vertex -> doubled-code qubit


def double_cover(gc: GenonCode, with_code: bool = True) -> DoubleCover:
    """Branched double cover of the graph relative to the code's domain walls.

    Cover dart ``(d, s)`` has index ``d + s * D``; the genon edge at a
    trivalent vertex is inserted into its Y corner on both sheets.
    """
    g = gc.graph
    nd = g.num_darts
    genons = gc.walls.genons
    gidx = {d: 2 * nd + 2 * j for j, d in enumerate(genons)}
    total = 2 * nd + 2 * len(genons)
    vertex_of = [0] * total
    sigma = [0] * total
    alpha = [0] * total
    wall = [gc.crosses_wall(d) for d in range(nd)]
    for s in (0, 1):
        for d in range(nd):
            vertex_of[d + s * nd] = int(g.vertex_of[d]) + s * g.V
            sigma[d + s * nd] = int(g.sigma[d]) + s * nd
            alpha[d + s * nd] = int(g.alpha[d]) + (s ^ wall[d]) * nd
    for d, base in gidx.items():
        prev = int(np.flatnonzero(g.sigma == d)[0])
        for s in (0, 1):
            gd = base + s
            vertex_of[gd] = int(g.vertex_of[d]) + s * g.V
            sigma[prev + s * nd] = gd
            sigma[gd] = d + s * nd
            alpha[gd] = base + (1 - s)
    cover = GenonGraph(vertex_of, sigma, alpha)
    projection = [v % g.V for v in range(cover.V)]
    sheet = [v // g.V for v in range(cover.V)]
    if not with_code:
        return DoubleCover(cover, None, projection, sheet, None)
    if not gc.is_clean:
        raise ConfigurationError(
            "code is not clean (a 4-valent vertex carries Y); apply local Cliffords to clean it first"
        )
    colouring = cover.bicolouring
    if colouring is None:
        raise ConfigurationError("cover graph is not bicolourable")
    fiber = _fiber_map(gc, cover, colouring, nd)
    if fiber is None:
        colouring = [1 - c for c in colouring]
        fiber = _fiber_map(gc, cover, colouring, nd)
    letters = ["XZ"[colouring[cover.face_of[d]]] for d in range(total)]
    return DoubleCover(cover, GenonCode(cover, letters), projection, sheet, fiber)


def _fiber_map(gc: GenonCode, cover: GenonGraph, colouring, nd: int) -> list[int] | None:
    """Match cover vertices with doubled-code qubits ``i`` / ``i + n``.

    An X-coloured lifted face meets copy ``i`` where the base letter is X and
    copy ``i + n`` where it is Z (the other way round for Z faces).
    """
    n = gc.graph.V
    copy = [-1] * cover.V
    for d in range(cover.num_darts):
        if d >= 2 * nd:
            continue
        base_letter = gc.letters[d % nd]
        if base_letter == "Y":
            continue
        col = "XZ"[colouring[cover.face_of[d]]]
        c = 0 if base_letter == col else 1
        v = int(cover.vertex_of[d])
        if copy[v] not in (-1, c):
            return None
        copy[v] = c
    out = []
    for v in range(cover.V):
        if copy[v] < 0:
            return None
        out.append(v % n + copy[v] * n)
    if sorted(out) != list(range(2 * n)):
        return None
    return out


# ----------------------------------------------------------------- families

def _gauss_reduce(x: int, y: int, a: int, b: int) -> tuple[int, int]:
    """Canonical representative of x + iy modulo the ideal (a + bi)."""
    n = a * a + b * b
    s = (x * a + y * b) // n
    t = (-x * b + y * a) // n
    return x - s * a + t * b, y - s * b - t * a


def gaussian_torus(a: int, b: int) -> tuple[GenonGraph, dict]:
    """Square lattice on Z[i]/(a + bi); darts at each vertex are E, N, W, S."""
    if (a, b) == (0, 0):
        raise ValueError("(a, b) must be nonzero")
    n = a * a + b * b
    reps = {}
    order = []
    start = _gauss_reduce(0, 0, a, b)
    reps[start] = 0
    order.append(start)
    queue = [start]
    while queue:
        x, y = queue.pop(0)
        for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            p = _gauss_reduce(x + dx, y + dy, a, b)
            if p not in reps:
                reps[p] = len(order)
                order.append(p)
                queue.append(p)
    assert len(order) == n, (len(order), n)
    vertex_of, sigma, alpha = [], [], []
    steps = ((1, 0), (0, 1), (-1, 0), (0, -1))
    for v, (x, y) in enumerate(order):
        for j in range(4):
            vertex_of.append(v)
            sigma.append(4 * v + (j + 1) % 4)
            dx, dy = steps[j]
            w = reps[_gauss_reduce(x + dx, y + dy, a, b)]
            alpha.append(4 * w + (j + 2) % 4)
    return GenonGraph(vertex_of, sigma, alpha), {"points": order}


def cyclic_toric(a: int, b: int) -> GenonCode:
    """The XZZX code on Z[i]/(a + bi): each square face reads X Z Z X at its
    bottom-left, bottom-right, top-left and top-right corners."""
    graph, _ = gaussian_torus(a, b)
    # corner of dart E is the SE quadrant, N -> NE, W -> NW, S -> SW
    quadrant_letter = {0: "Z", 1: "X", 2: "Z", 3: "X"}
    letters = [quadrant_letter[d % 4] for d in range(graph.num_darts)]
    return GenonCode(graph, letters)


def cyclic_toric_parameters(a: int, b: int) -> tuple[int, int, int]:
    n = a * a + b * b
    if n % 2:
        return n, 1, a + b
    return n, 2, max(a, b)


def _lattice_reducer(u, v):
    """Canonical representatives of Z^2 modulo the lattice spanned by u, v."""
    (a, b), (c, d) = u, v
    det = a * d - b * c
    if det == 0:
        raise ValueError("lattice vectors are dependent")
    sgn, D = (1 if det > 0 else -1), abs(det)

    def reduce(x, y):
        s, t = sgn * (x * d - y * c), sgn * (-x * b + y * a)
        fs, ft = s // D, t // D
        return x - fs * a - ft * c, y - fs * b - ft * d

    return reduce


def brick_torus(u, v) -> GenonGraph:
    """Hexagonal (brick-wall) lattice on Z^2 / <u, v>; u, v must have even
    coordinate sums. Even sites have darts E, N, W and odd sites E, W, S."""
    reduce = _lattice_reducer(u, v)
    if (u[0] + u[1]) % 2 or (v[0] + v[1]) % 2:
        raise ValueError("lattice vectors must preserve site parity")

    def steps(x, y):
        return [(1, 0), (0, 1), (-1, 0)] if (x + y) % 2 == 0 else [(1, 0), (-1, 0), (0, -1)]

    reps = {reduce(0, 0): 0}
    order = [reduce(0, 0)]
    i = 0
    while i < len(order):
        x, y = order[i]
        i += 1
        for dx, dy in steps(x, y):
            p = reduce(x + dx, y + dy)
            if p not in reps:
                reps[p] = len(order)
                order.append(p)
    index = {}
    for w, (x, y) in enumerate(order):
        for st in steps(x, y):
            index[(w, st)] = len(index)
    vertex_of, sigma, alpha = [], [], []
    for w, (x, y) in enumerate(order):
        st = steps(x, y)
        for j, (dx, dy) in enumerate(st):
            vertex_of.append(w)
            sigma.append(index[(w, st[(j + 1) % 3])])
            alpha.append(index[(reps[reduce(x + dx, y + dy)], (-dx, -dy))])
    return GenonGraph(vertex_of, sigma, alpha)


def contract_edges(graph: GenonGraph, darts) -> GenonGraph:
    """Contract the edges of ``darts`` (pairwise disjoint, between trivalent
    vertices), merging each pair of endpoints into one 4-valent vertex."""
    vertex_of = graph.vertex_of.tolist()
    sigma = graph.sigma.tolist()
    alpha = graph.alpha.tolist()
    removed = set()
    for d in darts:
        e = alpha[d]
        u, v = vertex_of[d], vertex_of[e]
        if u == v or graph.valence(u) != 3 or graph.valence(v) != 3:
            raise GraphError(f"edge of dart {d} does not join two trivalent vertices")
        pd, pe = sigma.index(d), sigma.index(e)
        sigma[pd], sigma[pe] = sigma[e], sigma[d]
        vertex_of = [u if w == v else w for w in vertex_of]
        removed |= {d, e}
    keep = [x for x in range(len(vertex_of)) if x not in removed]
    ren = {x: i for i, x in enumerate(keep)}
    verts = {w: i for i, w in enumerate(sorted({vertex_of[x] for x in keep}))}
    return GenonGraph(
        [verts[vertex_of[x]] for x in keep],
        [ren[sigma[x]] for x in keep],
        [ren[alpha[x]] for x in keep],
    )


def canonical_decoration(graph: GenonGraph) -> GenonCode:
    """A clean decoration: XYZ around trivalent and XZXZ around 4-valent vertices."""
    letters = [""] * graph.num_darts
    for cyc in graph.rotation:
        conf = "XYZ" if len(cyc) == 3 else "XZXZ"
        for d, c in zip(cyc, conf):
            letters[d] = c
    return GenonCode(graph, letters)


def _orient_faces_3d(points: np.ndarray, faces) -> list[list[int]]:
    """Order each face's vertices counter-clockwise seen from outside."""
    out = []
    centre = points.mean(axis=0)
    for f in faces:
        f = list(f)
        c = points[f].mean(axis=0)
        normal = c - centre
        normal /= np.linalg.norm(normal)
        ref = points[f[0]] - c
        ref -= normal * ref.dot(normal)
        ortho = np.cross(normal, ref)
        ang = [np.arctan2((points[v] - c).dot(ortho), (points[v] - c).dot(ref)) for v in f]
        out.append([v for _, v in sorted(zip(ang, f))])
    return out


def tetrahedron() -> GenonGraph:
    return GenonGraph.from_faces([(0, 1, 2), (2, 1, 3), (0, 2, 3), (1, 0, 3)])


def tetra_412() -> GenonCode:
    """The [[4,1,2]] code <XYZI, IXYZ, ZIXY, YZIX> on the tetrahedron."""
    graph = tetrahedron()
    rows = ["XYZI", "IXYZ", "ZIXY", "YZIX"]
    supports = [(0, 1, 2), (1, 2, 3), (0, 2, 3), (0, 1, 3)]
    deco = {}
    for f, face in enumerate(graph.faces):
        verts = sorted(int(graph.vertex_of[d]) for d in face)
        r = supports.index(tuple(verts))
        for v in verts:
            deco[(f, v)] = rows[r][v]
    return place_code(graph, deco)


def surface_512() -> GenonCode:
    """The [[5,1,2]] surface code with its outer face (all Y) on the back of the sphere."""
    faces = [(2, 1, 0), (2, 4, 1), (2, 3, 4), (2, 0, 3), (0, 1, 4, 3)]
    rows = ["XXXII", "IZZIZ", "IIXXX", "ZIZZI", "YYIYY"]
    graph = GenonGraph.from_faces(faces)
    deco = {}
    for f, face in enumerate(graph.faces):
        verts = sorted(int(graph.vertex_of[d]) for d in face)
        r = next(i for i, fc in enumerate(faces) if sorted(fc) == verts)
        for v in verts:
            deco[(f, v)] = rows[r][v]
    return place_code(graph, deco)


def prism() -> GenonGraph:
    # bottom triangle 0,1,2 and top triangle 3,4,5 with i above i-3
    return GenonGraph.from_faces([(0, 2, 1), (3, 4, 5), (0, 1, 4, 3), (1, 2, 5, 4), (2, 0, 3, 5)])


def rhombic_dodecahedron() -> GenonGraph:
    cube = [np.array(p) for p in itertools.product((-1, 1), repeat=3)]
    octa = [np.array(v) * s for v in np.eye(3, dtype=int) * 2 for s in (1, -1)]
    points = np.array(cube + octa, dtype=float)
    faces = []
    for i, j in itertools.combinations(range(8), 2):
        if np.abs(cube[i] - cube[j]).sum() != 2:
            continue
        shared = [8 + k for k, o in enumerate(octa) if np.abs(cube[i] - o / 2).sum() == 2 and np.abs(cube[j] - o / 2).sum() == 2]
        faces.append([i, j] + shared)
    return GenonGraph.from_faces(_orient_faces_3d(points, faces))


def torus_12_4_3() -> GenonCode:
    """Genus-one code with six genons: a nine-hexagon brick-wall torus with six
    disjoint edges contracted, leaving six pairwise non-adjacent trivalent
    vertices."""
    graph = contract_edges(brick_torus((6, 0), (1, 3)), TORUS_12_4_3_CONTRACT)
    return canonical_decoration(graph)


# chosen by exhaustive search over contractions with non-adjacent trivalent
# vertices; this is the first one reaching distance three
TORUS_12_4_3_CONTRACT = (1, 13, 17, 25, 29, 36)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: object
    n: int
    k: int
    d: int
    m: int
    genus: int
    double: tuple[int, int, int] | None = None
    cover_genus: int | None = None


CATALOG = {
    "tetra-412": CatalogEntry("tetra-412", tetra_412, 4, 1, 2, 4, 0, (8, 2, 2), 1),
    "surface-512": CatalogEntry("surface-512", surface_512, 5, 1, 2, 4, 0, (10, 2, 3), 1),
    "prism-622": CatalogEntry("prism-622", lambda: canonical_decoration(prism()), 6, 2, 2, 6, 0, (12, 4, 2), 2),
    "jaunty-14-3-3": CatalogEntry("jaunty-14-3-3", lambda: canonical_decoration(rhombic_dodecahedron()), 14, 3, 3, 8, 0, (28, 6, 3), 3),
    "torus-12-4-3": CatalogEntry("torus-12-4-3", torus_12_4_3, 12, 4, 3, 6, 1),
}


def builtin_graphs() -> dict[str, GenonCode]:
    return {name: entry.build() for name, entry in CATALOG.items()}
