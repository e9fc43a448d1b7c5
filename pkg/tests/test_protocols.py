import numpy as np
import pytest

from symdouble import gf2
from symdouble import protocols as p
from symdouble.clifford import CliffordCircuit, circuit_symplectic, lift_clifford, logical_action
from symdouble.code import StabilizerCode, code_from_paulis
from symdouble.genon import tetra_412
from symdouble.pauli import pauli_parse, pauli_render
from symdouble.sim import NoiseModel, Tableau, run

C412 = ["XYZI", "IXYZ", "ZIXY"]


def _images(op):
    return [("-" if s else "+") + pauli_render(r) for r, s in zip(op.images, op.signs)]


def _stabilized(code: StabilizerCode, circ: CliffordCircuit) -> bool:
    tab = Tableau(circ.n)
    for g in circ.gates:
        if g.name != "BARRIER":
            tab.apply(g)
    rows, signs = tab.stabilizers()
    return all(p.state_sign(rows, signs, r) == 0 for r in code.checks)


@pytest.fixture(scope="module")
def braid_entries():
    omitted = []
    entries = p.braid_protocol(tetra_412(), p.BRAID_BASIS_412, omitted)
    return entries, omitted


def test_braid_table_logical_column(braid_entries):
    entries, omitted = braid_entries
    assert omitted == []
    got = {e.perm: e.logical_name for e in entries}
    for perm, _, logical in p.BRAID_TABLE_412:
        assert got[perm] == logical


def test_braid_examples(braid_entries):
    got = {e.perm: e for e in braid_entries[0]}
    assert got[(1, 4, 3, 2)].logical_name == "H"
    assert got[(1, 3, 2, 4)].logical_name == "S"
    e = got[(3, 4, 1, 2)]
    assert e.logical_name == "I" and set(e.local_fix) == {"I"}


def test_braid_entries_preserve_code(braid_entries):
    code = tetra_412().code
    for e in braid_entries[0]:
        basis = np.array([pauli_parse(w).bits for w in p.BRAID_BASIS_412])
        act = logical_action(code, e.circuit(), basis)
        assert act is not None
        assert act.equals(e.logical, modulo_pauli=True)
        assert p.verify_entry_tableau(code, e, p.BRAID_BASIS_412)


def test_reference_witness_words_are_valid():
    code = tetra_412().code
    for perm, words, logical in p.BRAID_TABLE_412:
        e = p.entry_from_words(code, perm, words, p.BRAID_BASIS_412)
        assert e is not None and e.logical_name == logical


def test_encoder_examples():
    empty = StabilizerCode(np.zeros((0, 6), np.uint8), 3)
    assert len(p.encoder_circuit(empty).gates) == 0
    assert _stabilized(code_from_paulis(C412), p.PREP_412)
    code = code_from_paulis(C412)
    enc = p.encoder_circuit(code)
    assert _stabilized(code, enc)
    op = circuit_symplectic(enc)
    for j in range(code.m):
        z = np.zeros(2 * code.n, np.uint8)
        z[code.n + j] = 1
        img, _ = op.conjugate(z)
        assert code.contains(img)


def test_shipped_preps():
    s822 = p.bench_822()
    assert _stabilized(s822.code, p.PREP_822_00)
    assert _stabilized(s822.code, s822.prep_plus)
    s1023 = p.bench_1023()
    assert _stabilized(s1023.code, p.PREP_1023_PP)
    assert _stabilized(s1023.code, s1023.prep_zero)


def test_lifted_822_gate_is_cx():
    spec = p.bench_822()
    assert _images(spec.gate_logical) == ["+XI", "+XX", "+ZZ", "+IZ"]
    # the gate is the lift of the S-bar braid entry, up to relabelling
    code = tetra_412().code
    base = p.entry_from_words(code, (1, 3, 2, 4), ("HSH", "SH", "HS", "S"), p.BRAID_BASIS_412)
    lifted = lift_clifford(circuit_symplectic(base.circuit()))
    assert logical_action(spec.code, lifted) is not None


def test_lifted_1023_gate():
    spec = p.bench_1023()
    op = spec.gate_logical
    assert _images(op) == ["+IX", "+XX", "+ZZ", "+ZI"]
    assert not op.is_identity(modulo_pauli=True)
    assert (op @ op @ op).is_identity(modulo_pauli=True)


@pytest.mark.parametrize("builder", [p.bench_822, p.bench_1023])
def test_noiseless_benchmark(builder):
    spec = builder(NoiseModel.noiseless(), shots=200)
    spec.mode = "postselect"
    rows = p.lifted_benchmark(spec)
    assert len(rows) == 12
    assert all(r.errors == 0 and r.discarded == 0 for r in rows)


def test_822_truth_table():
    spec = p.bench_822(NoiseModel.noiseless(), shots=50)
    # CX with control on logical qubit 1 (second character)
    expect = {"00": "00", "01": "11", "10": "10", "11": "01"}
    for state, out in expect.items():
        assert p.benchmark_circuit(spec, spec.gate_label, state).expected == out


def test_lookup_decoder_rules():
    syn = np.array([[0, 0], [0, 0], [1, 0], [1, 0]], np.uint8)
    flips = np.array([[0, 0], [0, 0], [1, 0], [0, 1]], np.uint8)
    dec = p.train_lookup(syn, flips)
    assert dec.correction((0, 0)) == (0, 0)
    assert dec.correction((1, 0)) == (0, 1)
    assert dec.correction((1, 1)) == (0, 0)
    dec = p.train_lookup(np.zeros((5, 2), np.uint8), np.zeros((5, 2), np.uint8))
    assert dec.table == {(0, 0): (0, 0)}


def test_lookup_corrects_injected_x_error():
    spec = p.bench_1023()
    bc = p.benchmark_circuit(spec, "I", "00")
    faulty = bc.circuit.copy()
    idx = max(i for i, g in enumerate(faulty.gates) if g.name == "BARRIER")
    faulty.gates.insert(idx + 1, faulty.gates[0].__class__("X", (2,)))
    train = p.BenchmarkCircuit(bc.op, bc.state, faulty, bc.measured, bc.kind, bc.expected)
    rec = run(train.circuit, NoiseModel.noiseless(), 10)
    syn, log = p.analyse(spec, train, rec)
    assert syn.any()
    dec = p.train_lookup(syn, log)
    assert not dec.decode(syn, log).any()


def test_fault_injection_1023_small():
    failures, faults = p.fault_injection(p.bench_1023(), "g", "00")
    assert faults > 0 and failures == 0


def test_postselection_soundness_d2():
    assert p.undetected_weight_one(tetra_412().code) == []
    assert p.undetected_weight_one(p.bench_822().code) == []


def test_rb_bundle_and_noiseless_run():
    b = p.rb_bundle_412()
    assert len(b.elements) == 24
    pts = p.rb_run(b, (2, 8), 3, 20, NoiseModel.noiseless())
    assert all(pt.survival == 1.0 and pt.discarded == 0 for pt in pts)
    assert p.rb_csv(pts).splitlines()[0].startswith("length")


def test_rb_measurement_flips_discard():
    pts = p.rb_run(p.rb_bundle_412(), (4,), 2, 20, NoiseModel(0.0, 0.0, 1.0, 0.0, seed=1))
    assert pts[0].discard_fraction == 1.0


def test_doubled_logicals_anticommute_in_pairs():
    basis = p.doubled_logicals(p.BASE_BASIS_412)
    rows = np.array([v.bits for v in basis])
    from symdouble.pauli import pairing_matrix

    gram = pairing_matrix(rows, rows)
    assert gram.tolist() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]


def test_fault_tolerant_prep_822():
    spec = p.bench_822(ft_prep=True)
    code = spec.code
    assert _stabilized(code, spec.prep_zero)
    z_logicals = np.stack([b.z_part for b in spec.basis[1::2]])
    assert p.prep_bad_faults(spec.prep_zero, code.hz, z_logicals) == []
