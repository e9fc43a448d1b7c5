"""Acceptance suite: one test per criterion, with a PASS/FAIL summary line each.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
written to the terminal at the end of the module.
"""
import time

import numpy as np
import pytest

from symdouble import gf2
from symdouble import protocols as p
from symdouble.clifford import circuit_symplectic, lift_clifford, logical_action
from symdouble.code import DistanceBound, code_from_paulis, distance, is_css, parameters, random_code
from symdouble.double import (
    BlockFault,
    base_syndrome,
    double_check_matrix,
    double_code,
    doubled_syndrome_split,
    find_zx_dualities,
    lift_fault_z,
    unwrap,
)
from symdouble.genon import (
    CATALOG,
    cyclic_toric,
    double_cover,
    expected_k,
    internal_string,
    phi_matrix,
    string_space,
)
from symdouble.listings import CX_822_LISTING, G_1023_LISTING, RB_412_LISTING
from symdouble.pauli import pauli_parse
from symdouble.qasm import emit_qasm, gate_sequence, parse_qasm
from symdouble.sim import NoiseModel, run

C412 = ["XYZI", "IXYZ", "ZIXY"]
C822 = ["XXIIIXXI", "IXXIIIXX", "IIXXXIIX", "IZZIZZII", "IIZZIZZI", "ZIIZIIZZ"]
C513 = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]

RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    rep = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = ["", "acceptance summary"]
    for i in range(1, 13):
        ok, detail = RESULTS.get(i, (False, "not run"))
        lines.append(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    text = "\n".join(lines)
    if rep is not None:
        for line in lines:
            rep.write_line(line)
    else:
        print(text)


def record(i: int, ok: bool, detail: str) -> None:
    RESULTS[i] = (bool(ok), detail)
    print(f"criterion {i}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def _rows(words) -> np.ndarray:
    return np.array([pauli_parse(w).bits for w in words], dtype=np.uint8)


def test_c01_golden_double_matrix():
    h = code_from_paulis(C412).checks
    want = _rows(C822)
    best = float("inf")
    for _ in range(50):
        t = time.perf_counter()
        got = double_check_matrix(h)
        best = min(best, time.perf_counter() - t)
    ok = np.array_equal(got, want) and best < 1e-3
    record(1, ok, f"bit-exact={np.array_equal(got, want)} runtime={best * 1e6:.0f}us")


def test_c02_double_parameters():
    rng = np.random.default_rng(2)
    t = time.perf_counter()
    bad = []
    for i in range(200):
        n = int(rng.integers(1, 8))
        m = int(rng.integers(0, n))
        c = random_code(n, m, seed=int(rng.integers(2**31)))
        d = distance(c)
        dc = double_code(c)
        d2 = distance(dc)
        good = is_css(dc)[0] and dc.n == 2 * n and dc.k == 2 * c.k and not isinstance(d2, DistanceBound) and d2 >= d
        if not good:
            bad.append((i, n, m, d, d2))
    dt = time.perf_counter() - t
    record(2, not bad and dt < 120, f"200 codes, failures={bad[:3]} runtime={dt:.1f}s")


TORIC_TABLE = [
    ((2, 0), (4, 2, 2)), ((1, 2), (5, 1, 3)), ((2, 2), (8, 2, 2)), ((3, 0), (9, 1, 3)),
    ((1, 3), (10, 2, 3)), ((2, 3), (13, 1, 5)), ((4, 0), (16, 2, 4)), ((1, 4), (17, 1, 5)),
    ((3, 3), (18, 2, 3)), ((2, 4), (20, 2, 4)), ((5, 0), (25, 1, 5)), ((3, 4), (25, 1, 7)),
    ((1, 5), (26, 2, 5)),
]


def test_c03_cyclic_toric_table():
    t = time.perf_counter()
    wrong = []
    for (a, b), want in TORIC_TABLE:
        got = parameters(cyclic_toric(a, b).code, want[2] + 1)
        if got != want:
            wrong.append(((a, b), got, want))
    dt = time.perf_counter() - t
    record(3, not wrong and dt < 300, f"{len(TORIC_TABLE)} entries, mismatches={wrong} runtime={dt:.1f}s")


def test_c04_six_dualities():
    dc = double_code(code_from_paulis(C513))
    taus = find_zx_dualities(dc)
    params = sorted(parameters(unwrap(dc, t)) for t in taus)
    ok = len(taus) == 6 and params == [(5, 1, 2)] * 5 + [(5, 1, 3)]
    record(4, ok, f"dualities={len(taus)} unwrapped={params}")


def test_c05_braid_table():
    code = CATALOG["tetra-412"].build().code
    basis = _rows(p.BRAID_BASIS_412)
    omitted: list = []
    entries = p.braid_protocol(CATALOG["tetra-412"].build(), p.BRAID_BASIS_412, omitted)
    got = {e.perm: e for e in entries}
    mism = []
    for perm, _, logical in p.BRAID_TABLE_412:
        e = got.get(perm)
        if e is None or e.logical_name != logical:
            mism.append((perm, None if e is None else e.logical_name, logical))
            continue
        act = logical_action(code, e.circuit(), basis)
        if act is None or not act.equals(e.logical, modulo_pauli=True):
            mism.append((perm, "symplectic", logical))
        if not p.verify_entry_tableau(code, e, p.BRAID_BASIS_412):
            mism.append((perm, "tableau", logical))
    ok = len(entries) == 24 and not omitted and not mism
    record(5, ok, f"entries={len(entries)} mismatches={mism}")


def _truth_822(state: str) -> str:
    # CX with control logical 1, target logical 0
    b = list(state)
    if state[0] in "01":
        b[0] = str(int(b[0]) ^ int(b[1]))
    else:  # X basis: phase flips travel target -> control
        b[1] = "+-"[("+-".index(b[1])) ^ ("+-".index(b[0]))]
    return "".join(b)


def _truth_1023(state: str) -> str:
    # SWAP first, then CX with control logical 0, target logical 1
    b = [state[1], state[0]]
    if state[0] in "01":
        b[1] = str(int(b[1]) ^ int(b[0]))
    else:
        b[0] = "+-"[("+-".index(b[0])) ^ ("+-".index(b[1]))]
    return "".join(b)


def _images(op) -> list[str]:
    from symdouble.pauli import pauli_render

    return [("-" if s else "+") + pauli_render(r) for r, s in zip(op.images, op.signs)]


def test_c06_lifting_functoriality():
    notes = []
    ok = True
    # base S-bar braid entry on [[4,1,2]], lifted, acting on the doubled code
    tetra = CATALOG["tetra-412"].build().code
    base = p.entry_from_words(tetra, (1, 3, 2, 4), ("HSH", "SH", "HS", "S"), p.BRAID_BASIS_412)
    dc = double_code(tetra)
    lifted = lift_clifford(circuit_symplectic(base.circuit()))
    basis822 = np.array([v.bits for v in p.doubled_logicals(p.BASE_BASIS_412)])
    act = logical_action(dc, lifted, basis822)
    ok &= act is not None and _images(act) == ["+XI", "+XX", "+ZZ", "+IZ"]
    # transversal SH on [[5,1,3]], lifted
    five = p.five_qubit_code()
    sh = p.CliffordCircuit(5)
    for q in range(5):
        sh.gates.extend(p.word_gates("SH", q))
    basis1023 = np.array([v.bits for v in p.doubled_logicals(p.BASE_BASIS_513)])
    act2 = logical_action(double_code(five), lift_clifford(circuit_symplectic(sh)), basis1023)
    ok &= act2 is not None and _images(act2) == ["+IX", "+XX", "+ZZ", "+ZI"]
    notes.append(f"logical_action ok={ok}")
    for spec, truth in ((p.bench_822(NoiseModel.noiseless(), 100), _truth_822), (p.bench_1023(NoiseModel.noiseless(), 100), _truth_1023)):
        spec.mode = "postselect"
        spec.jobs = [j for j in spec.jobs if j[0] != "I"]
        for op, state in spec.jobs:
            ok &= p.benchmark_circuit(spec, op, state).expected == truth(state)
        rows = p.lifted_benchmark(spec)
        errs = sum(r.errors for r in rows)
        disc = sum(r.discarded for r in rows)
        ok &= len(rows) == 8 and errs == 0 and disc == 0
        notes.append(f"{spec.name}: {len(rows)} states errors={errs} discards={disc}")
    record(6, ok, "; ".join(notes))


def test_c07_syndrome_correspondence():
    rng = np.random.default_rng(7)
    bad = 0
    pairs = 0
    zz_checked = 0
    while pairs < 500:
        n = int(rng.integers(2, 9))
        c = random_code(n, int(rng.integers(1, n + 1)), seed=int(rng.integers(2**31)))
        dc = double_code(c)
        for _ in range(10):
            w = int(rng.integers(0, 4))
            qs = rng.choice(n, size=min(w, n), replace=False)
            fx = np.zeros(n, np.uint8)
            fz = np.zeros(n, np.uint8)
            for q in qs:
                kind = int(rng.integers(1, 4))
                fx[q] = kind & 1
                fz[q] = kind >> 1
            f = BlockFault(fx, fz)
            lifted = lift_fault_z(f)
            s_x, s_z = doubled_syndrome_split(dc, lifted)
            if not np.array_equal(s_x, base_syndrome(c, f)) or s_z.any():
                bad += 1
            # w(f_Z; f_X) equals the weight of the swapped X-type lift
            if int(lifted.sum()) != int(fz.sum() + fx.sum()):
                bad += 1
            pairs += 1
        for i in range(n):
            zz = np.zeros(4 * n, np.uint8)
            zz[2 * n + i] = zz[3 * n + i] = 1
            e = np.eye(n, dtype=np.uint8)[i]
            if not np.array_equal(doubled_syndrome_split(dc, zz)[0], base_syndrome(c, BlockFault(e, e))):
                bad += 1
            zz_checked += 1
    record(7, bad == 0, f"pairs={pairs} ZZ faults={zz_checked} mismatches={bad}")


def test_c08_genon_bookkeeping():
    t = time.perf_counter()
    names = ["tetra-412", "surface-512", "prism-622", "jaunty-14-3-3", "torus-12-4-3"]
    ms, genera, notes = [], [], []
    ok = True
    for name in names:
        gc = CATALOG[name].build()
        m = gc.walls.m
        ms.append(m)
        try:
            cover = double_cover(gc)
        except ValueError as exc:
            genera.append(None)
            notes.append(f"{name}: no cover ({exc})")
            continue
        genera.append(cover.graph.genus)
        # Euler characteristic of a branched double cover, branch points at genons
        ok &= cover.graph.chi == 2 * gc.graph.chi - m
        ok &= cover.graph.V == 2 * gc.graph.V
        if gc.is_clean and cover.code is not None:
            back = [0] * len(cover.fiber_map)
            for i, q in enumerate(cover.fiber_map):
                back[q] = i
            same = cover.code.code.permuted(back).same_space(double_code(gc.code))
            ok &= same
            if name == "jaunty-14-3-3":
                ok &= (cover.code.code.n, cover.code.code.k) == (28, 6)
                ok &= isinstance(distance(cover.code.code, 2), DistanceBound)
    ok &= ms == [4, 4, 6, 8, 6]
    ok &= genera[:4] == [1, 1, 2, 3]
    dt = time.perf_counter() - t
    ok &= dt < 60
    record(8, ok, f"m={ms} cover genus={genera} runtime={dt:.1f}s {' '.join(notes)}")


def test_c09_k_formula_and_strings():
    ok = True
    report = []
    codes = {name: e.build() for name, e in CATALOG.items()}
    codes.update({f"toric-{a}-{b}": cyclic_toric(a, b) for a, b in [(1, 2), (2, 2), (3, 0), (1, 3), (2, 3), (4, 0)]})
    for name, gc in codes.items():
        g = gc.graph
        if g.V > 16:
            continue
        m = gc.walls.m
        k_formula = 2 * g.genus if g.is_bicolourable else 2 * g.genus + m // 2 - 1
        dim_formula = 2 * g.V + (2 if g.is_bicolourable else 1)
        basis = string_space(g)
        images = gf2.matmul(basis, phi_matrix(gc))
        surj = gf2.same_rowspan(images, gc.code.normalizer)
        kern = gf2.kernel(images.T)
        ker_strings = gf2.matmul(kern, basis) if kern.size else np.zeros((0, 2 * g.E), np.uint8)
        internal = np.array([internal_string(g, f) for f in range(g.F)])
        kernel_ok = gf2.same_rowspan(ker_strings, internal)
        good = gc.code.k == k_formula == expected_k(gc) and basis.shape[0] == dim_formula and surj and kernel_ok
        ok &= good
        report.append(f"{name}:{'ok' if good else 'bad'}")
    record(9, ok, " ".join(report))


def test_c10_fault_tolerance_1023():
    t = time.perf_counter()
    spec = p.bench_1023()
    fails = 0
    total = 0
    for op, state in spec.jobs:
        if op == "I":
            continue
        f, n = p.fault_injection(spec, op, state)
        fails += f
        total += n
    dt = time.perf_counter() - t
    record(10, fails == 0 and total > 0 and dt < 60, f"faults injected={total} unrecovered={fails} runtime={dt:.1f}s")


RB_CIRCUITS = 20
RB_SHOTS = 2500
P2_SHOTS_PER_JOB = 40000


def test_c11_protocol_sanity():
    t = time.perf_counter()
    bundle = p.rb_bundle_412()
    noiseless = p.rb_run(bundle, (16, 256, 512), 5, 50, NoiseModel.noiseless())
    ok_a = all(pt.survival == 1.0 and pt.discarded == 0 for pt in noiseless)
    pts = p.rb_run(bundle, (16, 64, 256), RB_CIRCUITS, RB_SHOTS, NoiseModel())
    surv = [pt.survival for pt in pts]
    total = sum(pt.shots for pt in pts)
    ok_b = total >= 10**4 and all(a >= b for a, b in zip(surv, surv[1:]))
    rates = {}
    shots = {}
    for p2 in (1e-2, 3e-3):
        spec = p.bench_822(NoiseModel(0.0, p2, 0.0, 0.0), P2_SHOTS_PER_JOB, ft_prep=True)
        spec.mode = "postselect"
        rows = p.lifted_benchmark(spec)
        acc = sum(r.accepted for r in rows)
        rates[p2] = sum(r.errors for r in rows) / acc
        shots[p2] = sum(r.shots for r in rows)
    ratio = rates[1e-2] / rates[3e-3] if rates[3e-3] else float("inf")
    quad = (1e-2 / 3e-3) ** 2
    ok_c = min(shots.values()) >= 10**5 and quad / 2 <= ratio <= 2 * quad
    dt = time.perf_counter() - t
    detail = (
        f"(a) noiseless={ok_a} (b) survival 16/64/256={[round(s, 6) for s in surv]} shots={total} monotone={ok_b} "
        f"(c) rates={ {k: f'{v:.3e}' for k, v in rates.items()} } ratio={ratio:.2f} band=[{quad / 2:.2f},{2 * quad:.2f}] "
        f"runtime={dt:.0f}s"
    )
    record(11, ok_a and ok_b and ok_c and dt < 600, detail)


def test_c12_qasm_golden():
    ok = True
    s822 = p.bench_822()
    ok &= gate_sequence(emit_qasm(p.benchmark_circuit(s822, s822.gate_label, "01").circuit)) == gate_sequence(CX_822_LISTING)
    s1023 = p.bench_1023()
    ok &= gate_sequence(emit_qasm(p.benchmark_circuit(s1023, s1023.gate_label, "+-").circuit)) == gate_sequence(G_1023_LISTING)
    rb = parse_qasm(RB_412_LISTING)
    ok &= gate_sequence(emit_qasm(rb)) == gate_sequence(RB_412_LISTING)
    ok &= not run(rb, NoiseModel.noiseless(), 10).any()
    golden = ok
    rng = np.random.default_rng(12)
    bad = 0
    from symdouble.clifford import random_circuit

    for _ in range(100):
        n = int(rng.integers(1, 7))
        circ = random_circuit(n, int(rng.integers(1, 40)), rng)
        if n > 1:
            circ.append("PERM", perm=tuple(int(v) for v in rng.permutation(n)))
            circ.extend(random_circuit(n, 5, rng))
        back = parse_qasm(emit_qasm(circ))
        if circuit_symplectic(back.unitary_part()) != circuit_symplectic(circ.unitary_part()):
            bad += 1
    record(12, golden and bad == 0, f"golden listings={golden} random round-trip failures={bad}/100")
