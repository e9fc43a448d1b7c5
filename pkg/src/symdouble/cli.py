"""Command-line entry point: ``symdouble <command> ...``.

Exit codes: 0 on success, 1 on a domain error (bad code, graph or QASM
input), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import protocols as proto
from .clifford import CliffordCircuit, circuit_symplectic, lift_to_circuit, logical_action
from .code import DistanceBound, StabilizerCode, code_from_text, code_to_text, distance
from .double import ZXDuality, double_code, find_zx_dualities, unwrap
from .genon import CATALOG, GenonCode, GenonGraph, canonical_decoration, cyclic_toric, double_cover
from .pauli import pauli_render
from .qasm import QasmError, emit_qasm, parse_qasm
from .sim import DEFAULT_SEED, NoiseModel


class UsageError(Exception):
    pass


def _read_code(path: str) -> StabilizerCode:
    return code_from_text(Path(path).read_text())


def _params_line(c: StabilizerCode, max_d: int | None = None) -> str:
    d = distance(c, max_d)
    d_txt = f">{d.max_weight}" if isinstance(d, DistanceBound) else str(d)
    return f"[[{c.n},{c.k},{d_txt}]]"


def cmd_params(args) -> str:
    c = _read_code(args.codefile)
    line = _params_line(c, args.max_d)
    d_txt = line[1:-2].split(",")[2]
    return f"n={c.n}\nk={c.k}\nd={d_txt}\n{line}\n"


def cmd_double(args) -> str:
    return code_to_text(double_code(_read_code(args.codefile)))


def cmd_dualities(args) -> str:
    c = _read_code(args.codefile)
    taus = find_zx_dualities(c)
    return "".join(f"{t.to_cycles()}\n" for t in taus) or "none\n"


def cmd_unwrap(args) -> str:
    c = _read_code(args.codefile)
    if args.duality:
        taus = [ZXDuality.from_cycles(args.duality, c.n)]
    else:
        taus = find_zx_dualities(c)
        if not taus:
            raise ValueError("code has no fixed-point-free involutory ZX-duality")
    out = []
    for t in taus:
        base = unwrap(c, t)
        out.append(f"# duality {t.to_cycles()} {_params_line(base)}\n{code_to_text(base)}")
    return "".join(out)


def parse_gateword(word: str, n: int) -> CliffordCircuit:
    """A base circuit from a word: either letters from {H, S} applied
    transversally (operator order, e.g. ``SH``) or tokens like ``H0 S1 CX0,1``."""
    word = word.strip()
    circ = CliffordCircuit(n)
    if word and set(word) <= set("HS"):
        for q in range(n):
            circ.gates.extend(proto.word_gates(word, q))
        return circ
    for tok in word.replace(";", " ").split():
        name = tok.rstrip("0123456789,")
        qs = tok[len(name):]
        if not name or not qs:
            raise ValueError(f"bad gate token {tok!r}")
        circ.append(name.upper(), *(int(q) for q in qs.split(",")))
    return circ


def cmd_lift(args) -> str:
    c = _read_code(args.codefile)
    base = parse_gateword(args.gateword, c.n)
    op = circuit_symplectic(base)
    lifted = lift_to_circuit(op)
    dc = double_code(c)
    out = []
    act = logical_action(c, base)
    out.append(f"base logical action: {'does not preserve the code' if act is None else _fmt_op(act)}")
    dact = logical_action(dc, lifted)
    out.append(f"doubled logical action: {'does not preserve the code' if dact is None else _fmt_op(dact)}")
    out.append("")
    out.append(emit_qasm(lifted))
    return "\n".join(out)


def _fmt_op(op) -> str:
    return "[" + ", ".join(("-" if s else "") + pauli_render(r) for r, s in zip(op.images, op.signs)) + "]"


def _genon_source(args) -> GenonCode:
    src = args.source
    if src == "cyclic-toric":
        if len(args.params) != 2:
            raise UsageError("cyclic-toric needs two integers a b")
        a, b = (int(v) for v in args.params)
        return cyclic_toric(a, b)
    if src in CATALOG:
        return CATALOG[src].build()
    path = Path(src)
    if not path.exists():
        raise UsageError(f"unknown family or missing graph file {src!r}; families: cyclic-toric, {', '.join(CATALOG)}")
    graph, letters = GenonGraph.from_text(path.read_text())
    return GenonCode(graph, letters) if letters else canonical_decoration(graph)


def cmd_genon(args) -> str:
    gc = _genon_source(args)
    code = gc.code
    walls = gc.walls
    g = gc.graph
    lines = [
        f"code: {_params_line(code, args.max_d)}",
        f"graph: V={g.V} E={g.E} F={g.F} genus={g.genus}",
        f"domain walls: {len(walls.edges)} edges",
        f"genons: {walls.m}",
    ]
    if args.show_code:
        lines.append(code_to_text(code).rstrip())
    try:
        cover = double_cover(gc)
        cg = cover.graph
        same = cover.fiber_map is not None and cover.code.code.permuted(_inverse(cover.fiber_map)).same_space(double_code(code))
        lines.append(f"double cover: V={cg.V} genus={cg.genus} matches doubled code: {'yes' if same else 'no'}")
    except ValueError as exc:
        lines.append(f"double cover: not available ({exc})")
    return "\n".join(lines) + "\n"


def _inverse(perm) -> list[int]:
    back = [0] * len(perm)
    for i, p in enumerate(perm):
        back[p] = i
    return back


def _noise(args) -> NoiseModel:
    if args.noiseless:
        return NoiseModel.noiseless(args.seed)
    base = NoiseModel()
    return NoiseModel(
        base.p1 if args.p1 is None else args.p1,
        base.p2 if args.p2 is None else args.p2,
        base.p_meas if args.p_meas is None else args.p_meas,
        base.p_prep if args.p_prep is None else args.p_prep,
        args.seed,
    )


def cmd_protocol(args) -> str:
    if args.kind == "braid":
        if args.name != "412":
            raise UsageError("braid protocol is available for 412")
        from .genon import tetra_412

        omitted: list = []
        entries = proto.braid_protocol(tetra_412(), proto.BRAID_BASIS_412, omitted)
        lines = [f"{'permutation':<14} {'local':<18} {'pauli':<6} logical"]
        for e in entries:
            lines.append(f"{str(e.perm):<14} {','.join(e.local_fix):<18} {e.pauli_fix:<6} {e.logical_name}")
        for a in omitted:
            lines.append(f"{str(a):<14} no fix-up")
        return "\n".join(lines) + "\n"
    noise = _noise(args)
    if args.kind == "rb":
        if args.name != "412":
            raise UsageError("randomized benchmarking is available for 412")
        lengths = [int(v) for v in args.lengths.split(",")]
        points = proto.rb_run(None, lengths, args.circuits, args.shots or 100, noise)
        return proto.rb_csv(points)
    if args.name == "822":
        spec = proto.bench_822(noise, args.shots or 5000, ft_prep=args.ft_prep)
    elif args.name == "1023":
        spec = proto.bench_1023(noise, args.shots or 5000, mode=args.mode or "lookup")
    else:
        raise UsageError("benchmarks: 822, 1023")
    if args.mode:
        spec.mode = args.mode
    rows = proto.lifted_benchmark(spec, training_shots=args.training_shots)
    return (proto.rows_to_json(rows) + "\n") if args.json else proto.rows_to_table(rows) + "\n"


def builtin_circuits() -> dict[str, CliffordCircuit]:
    from .listings import RB_412_LISTING

    out = {"rb-412-listing": parse_qasm(RB_412_LISTING)}
    s822 = proto.bench_822()
    for op, st in s822.jobs:
        out[f"822-{op.lower()}-{st}"] = proto.benchmark_circuit(s822, op, st).circuit
    s1023 = proto.bench_1023()
    for op, st in s1023.jobs:
        out[f"1023-{op.lower()}-{st}"] = proto.benchmark_circuit(s1023, op, st).circuit
    return out


def cmd_qasm(args) -> str:
    if args.action == "emit":
        circuits = builtin_circuits()
        if args.circuit in circuits:
            return emit_qasm(circuits[args.circuit])
        path = Path(args.circuit)
        if not path.exists():
            raise UsageError(f"unknown circuit {args.circuit!r}; built-in: {', '.join(circuits)}")
        return emit_qasm(parse_qasm(path.read_text()))
    text = Path(args.circuit).read_text()
    circ = parse_qasm(text)
    return f"ok: {circ.n} qubits, {len(circ.gates)} instructions\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symdouble", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("params", help="report [[n,k,d]] of a code file")
    s.add_argument("codefile")
    s.add_argument("--max-d", type=int, default=None, help="stop the distance search at this weight")
    s.set_defaults(func=cmd_params)

    s = sub.add_parser("double", help="write the symplectic double of a code")
    s.add_argument("codefile")
    s.set_defaults(func=cmd_double)

    s = sub.add_parser("unwrap", help="base codes of a CSS code via ZX-dualities")
    s.add_argument("codefile")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--duality", help="cycles, e.g. '(1 6)(2 7)'")
    g.add_argument("--all", action="store_true", help="use every duality (default)")
    s.set_defaults(func=cmd_unwrap)

    s = sub.add_parser("dualities", help="list fixed-point-free involutory ZX-dualities")
    s.add_argument("codefile")
    s.set_defaults(func=cmd_dualities)

    s = sub.add_parser("lift", help="lift a base gate to the doubled code")
    s.add_argument("codefile")
    s.add_argument("gateword", help="transversal word such as SH, or tokens like 'H0 CX0,1'")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("genon", help="genon codes")
    gs = s.add_subparsers(dest="genon_command", required=True)
    b = gs.add_parser("build", help="build a genon code and its double cover")
    b.add_argument("source", help=f"cyclic-toric, {', '.join(CATALOG)} or a graph file")
    b.add_argument("params", nargs="*")
    b.add_argument("--max-d", type=int, default=None)
    b.add_argument("--show-code", action="store_true")
    b.set_defaults(func=cmd_genon)

    s = sub.add_parser("protocol", help="braiding, randomized benchmarking and benchmarks")
    s.add_argument("kind", choices=("braid", "rb", "bench"))
    s.add_argument("name", help="412 for braid/rb, 822 or 1023 for bench")
    s.add_argument("--shots", type=int, default=None)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--noiseless", action="store_true")
    s.add_argument("--p1", type=float)
    s.add_argument("--p2", type=float)
    s.add_argument("--p-meas", type=float)
    s.add_argument("--p-prep", type=float)
    s.add_argument("--lengths", default="16,256,512")
    s.add_argument("--circuits", type=int, default=10)
    s.add_argument("--mode", choices=("postselect", "lookup"))
    s.add_argument("--training-shots", type=int, default=50000)
    s.add_argument("--ft-prep", action="store_true", help="822: fault-tolerant |00> preparation")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_protocol)

    s = sub.add_parser("qasm", help="emit or check OpenQASM 2.0")
    s.add_argument("action", choices=("emit", "check"))
    s.add_argument("circuit", help="built-in circuit name or a QASM file")
    s.set_defaults(func=cmd_qasm)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        sys.stdout.write(args.func(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError, QasmError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
