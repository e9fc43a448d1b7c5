"""OpenQASM 2.0 emission and parsing for Clifford circuits.

Qubit permutations are never emitted as gates. The emitter keeps a list
``labels`` where ``labels[v]`` is the physical wire currently holding the
circuit's qubit ``v``; a ``PERM`` updates it and is recorded as the comments
``// P(...)`` and ``// labels = [...]``. With ``P`` printed, the update is
``labels[j] <- labels[P[j]]``, so ``P`` is the inverse of the gate's
``perm`` (which sends the state of ``i`` to ``perm[i]``).
"""
from __future__ import annotations

import re

from .clifford import CliffordCircuit, Gate

HEADER = 'OPENQASM 2.0;\ninclude "hqslib1.inc";\n'
VOCABULARY = ("reset", "h", "s", "sdg", "x", "z", "cx", "cy", "cz", "measure", "barrier")

_DIRECT = {"H": "h", "S": "s", "SDG": "sdg", "X": "x", "Z": "z", "CX": "cx", "CY": "cy", "CZ": "cz"}
# decompositions into the vocabulary, in time order (equal up to global phase)
_EXPAND = {
    "Y": ("z", "x"),
    "SQRTX": ("h", "s", "h"),
    "SQRTXDG": ("h", "sdg", "h"),
}


class QasmError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _inverse(perm) -> list[int]:
    back = [0] * len(perm)
    for i, p in enumerate(perm):
        back[p] = i
    return back


def _fmt(seq) -> str:
    return "[" + ", ".join(map(str, seq)) + "]"


def emit_qasm(circ: CliffordCircuit, comments: dict[int, str] | None = None) -> str:
    """QASM text for ``circ``; ``comments`` maps gate index to a comment
    emitted just before that gate."""
    n = circ.n
    comments = comments or {}
    n_meas = sum(1 for g in circ.gates if g.name == "MEASURE")
    lines = [HEADER, f"qreg q[{n}];", f"creg m[{max(n_meas, n)}];", ""]
    labels = list(range(n))
    bit = 0
    gates = circ.gates
    i = 0
    while i < len(gates):
        g = gates[i]
        if i in comments:
            lines.append(f"// {comments[i]}")
        if g.name in ("RESET", "MEASURE"):
            run = gates[i:i + n]
            phys = [labels[r.qubits[0]] for r in run]
            whole = len(run) == n and all(r.name == g.name for r in run) and phys == list(range(n))
            whole = whole and not any(j in comments for j in range(i + 1, i + n))
            if whole and (g.name == "RESET" or bit == 0):
                lines.append("reset q;" if g.name == "RESET" else "measure q -> m;")
                bit += n if g.name == "MEASURE" else 0
                i += n
                continue
            q = labels[g.qubits[0]]
            if g.name == "RESET":
                lines.append(f"reset q[{q}];")
            else:
                lines.append(f"measure q[{q}] -> m[{bit}];")
                bit += 1
        elif g.name == "BARRIER":
            if g.qubits:
                lines.append("barrier " + ", ".join(f"q[{labels[q]}]" for q in g.qubits) + ";")
            else:
                lines.append("barrier q;")
        elif g.name in ("PERM", "SWAP"):
            if g.name == "SWAP":
                a, b = g.qubits
                perm = list(range(n))
                perm[a], perm[b] = b, a
            else:
                perm = list(g.perm)
            p = _inverse(perm)
            labels = [labels[p[j]] for j in range(n)]
            lines.append(f"// P({', '.join(map(str, p))})")
            lines.append(f"// labels = {_fmt(labels)}")
        elif g.name in _DIRECT:
            args = ", ".join(f"q[{labels[q]}]" for q in g.qubits)
            lines.append(f"{_DIRECT[g.name]} {args};")
        elif g.name in _EXPAND:
            q = labels[g.qubits[0]]
            for name in _EXPAND[g.name]:
                lines.append(f"{name} q[{q}];")
        else:
            raise QasmError(f"gate {g.name} has no QASM form")
        i += 1
    lines.append(f"// final qubit order: {_fmt(labels)}")
    return "\n".join(lines) + "\n"


_QARG = re.compile(r"^q\[(\d+)\]$")
_PERM = re.compile(r"^P\(([\d,\s]*)\)$")
_LABELS = re.compile(r"^labels\s*=\s*\[([\d,\s]*)\]$")


def parse_qasm(text: str) -> CliffordCircuit:
    """Parse the restricted QASM dialect produced by :func:`emit_qasm`.

    Gates are mapped back from physical wires to circuit qubits through the
    permutation comments, so ``parse_qasm(emit_qasm(c))`` reproduces ``c``
    up to the expansion of gates outside the vocabulary.
    """
    n = None
    gates: list[Gate] = []
    labels: list[int] = []
    where: list[int] = []  # physical wire -> circuit qubit

    def qubit(tok: str, line: int) -> int:
        m = _QARG.match(tok.strip())
        if not m:
            raise QasmError(f"bad qubit argument {tok.strip()!r}", line)
        q = int(m.group(1))
        if n is None or q >= n:
            raise QasmError(f"qubit {q} outside register", line)
        return where[q]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        code, _, comment = raw.partition("//")
        comment = comment.strip()
        if comment:
            mp = _PERM.match(comment)
            if mp:
                if n is None:
                    raise QasmError("permutation before qreg", lineno)
                p = [int(t) for t in mp.group(1).replace(",", " ").split()]
                if sorted(p) != list(range(n)):
                    raise QasmError("P(...) is not a permutation of the register", lineno)
                gates.append(Gate("PERM", (), tuple(_inverse(p))))
                labels = [labels[p[j]] for j in range(n)]
                where = _inverse(labels)
            ml = _LABELS.match(comment)
            if ml and [int(t) for t in ml.group(1).replace(",", " ").split()] != labels:
                raise QasmError("labels comment disagrees with the permutations", lineno)
        for stmt in code.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            if stmt.startswith("OPENQASM"):
                if stmt.split()[1:] != ["2.0"]:
                    raise QasmError("only OPENQASM 2.0 is supported", lineno)
                continue
            if stmt.startswith("include"):
                continue
            m = re.match(r"^qreg\s+q\[(\d+)\]$", stmt)
            if m:
                if n is not None:
                    raise QasmError("second qreg", lineno)
                n = int(m.group(1))
                labels = list(range(n))
                where = list(range(n))
                continue
            m = re.match(r"^creg\s+m\[(\d+)\]$", stmt)
            if m:
                continue
            if stmt.startswith(("qreg", "creg")):
                raise QasmError(f"malformed register declaration {stmt!r}", lineno)
            if n is None:
                raise QasmError("gate before qreg", lineno)
            name, _, rest = stmt.partition(" ")
            name = name.strip()
            rest = rest.strip()
            if name not in VOCABULARY:
                raise QasmError(f"unsupported gate {name!r}", lineno)
            if name == "measure":
                src, arrow, dst = rest.partition("->")
                if not arrow:
                    raise QasmError("measure needs '->'", lineno)
                src, dst = src.strip(), dst.strip()
                if src == "q" and dst == "m":
                    gates.extend(Gate("MEASURE", (where[j],)) for j in range(n))
                else:
                    if not re.match(r"^m\[\d+\]$", dst):
                        raise QasmError(f"bad classical target {dst!r}", lineno)
                    gates.append(Gate("MEASURE", (qubit(src, lineno),)))
                continue
            if name in ("reset", "barrier"):
                if rest == "q":
                    if name == "reset":
                        gates.extend(Gate("RESET", (where[j],)) for j in range(n))
                    else:
                        gates.append(Gate("BARRIER"))
                else:
                    qs = [qubit(t, lineno) for t in rest.split(",")]
                    if name == "reset":
                        gates.extend(Gate("RESET", (q,)) for q in qs)
                    else:
                        gates.append(Gate("BARRIER", tuple(qs)))
                continue
            args = [qubit(t, lineno) for t in rest.split(",")]
            want = 2 if name in ("cx", "cy", "cz") else 1
            if len(args) != want:
                raise QasmError(f"{name} takes {want} qubit(s)", lineno)
            try:
                gates.append(Gate(name.upper(), tuple(args)))
            except ValueError as exc:
                raise QasmError(str(exc), lineno) from None
    if n is None:
        raise QasmError("no qreg declared")
    return CliffordCircuit(n, gates)


def gate_sequence(text: str) -> list[str]:
    """The gate statements of a QASM text, one per entry, comments dropped."""
    out = []
    for raw in text.splitlines():
        code = raw.partition("//")[0]
        for stmt in code.split(";"):
            stmt = " ".join(stmt.split())
            if not stmt or stmt.startswith(("OPENQASM", "include", "qreg", "creg")):
                continue
            out.append(stmt)
    return out
