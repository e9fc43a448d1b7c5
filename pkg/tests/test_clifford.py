import numpy as np
import pytest

from symdouble import gf2
from symdouble.clifford import (
    CliffordCircuit,
    SymplecticClifford,
    circuit_symplectic,
    clifford_order,
    gate_symplectic,
    lift_circuit_gatewise,
    lift_clifford,
    lift_matrix,
    lift_to_circuit,
    logical_action,
    logical_clifford,
    random_circuit,
    random_symplectic,
    synthesize,
)
from symdouble.code import code_from_paulis, random_code
from symdouble.double import double_code
from symdouble.pauli import omega, pauli_parse
from symdouble.sim import Tableau

C412 = ["XYZI", "IXYZ", "ZIXY"]
C513 = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]


def test_generator_matrices():
    assert gate_symplectic("H", 1, 0).mat.tolist() == [[0, 1], [1, 0]]
    assert gate_symplectic("S", 1, 0).mat.tolist() == [[1, 0], [1, 1]]
    circ = CliffordCircuit(1)
    for _ in range(4):
        circ.append("S", 0)
    op = circuit_symplectic(circ)
    assert op.is_identity()
    with pytest.raises(ValueError):
        gate_symplectic("MEASURE", 1, 0)


def test_shs_equals_hsh():
    h, s = gate_symplectic("H", 1, 0), gate_symplectic("S", 1, 0)
    assert (s @ h @ s).equals(h @ s @ h, modulo_pauli=True)


def test_clifford_order():
    assert [clifford_order(n) for n in range(3)] == [8, 192, 92160]


def test_homomorphism(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        a, b = random_circuit(n, 15, rng), random_circuit(n, 15, rng)
        both = a.copy().extend(b)
        assert circuit_symplectic(both) == circuit_symplectic(b) @ circuit_symplectic(a)
        op = circuit_symplectic(both)
        assert np.array_equal(gf2.matmul(gf2.matmul(op.mat.T, omega(n)), op.mat), omega(n))


def test_inverse(rng):
    for _ in range(10):
        op = random_symplectic(3, rng)
        assert (op @ op.inverse()).is_identity()


def test_lift_examples():
    for gate, expect in [("H", [("SWAP", (0, 1))]), ("S", [("CX", (0, 1))])]:
        lifted = lift_clifford(gate_symplectic(gate, 1, 0))
        ref = CliffordCircuit(2)
        for name, qs in expect:
            ref.append(name, *qs)
        assert lifted.equals(circuit_symplectic(ref), modulo_pauli=True)
    assert lift_clifford(SymplecticClifford.identity(3)).is_identity()
    assert len(lift_to_circuit(SymplecticClifford.identity(3)).gates) == 0


def test_lift_swap_is_double_swap():
    lifted = lift_clifford(gate_symplectic("SWAP", 3, 0, 2))
    ref = CliffordCircuit(6).append("SWAP", 0, 2).append("SWAP", 3, 5)
    assert lifted == circuit_symplectic(ref)


def test_lift_cx_uses_two_cx():
    circ = lift_to_circuit(gate_symplectic("CX", 2, 0, 1))
    assert {g.name for g in circ.gates} <= {"CX", "SWAP", "PERM"}
    assert circuit_symplectic(circ) == lift_clifford(gate_symplectic("CX", 2, 0, 1))


def test_lift_is_injective_homomorphism(rng):
    for _ in range(10):
        n = int(rng.integers(1, 4))
        m, k = random_symplectic(n, rng), random_symplectic(n, rng)
        assert lift_clifford(m @ k).equals(lift_clifford(m) @ lift_clifford(k), modulo_pauli=True)
        lm = lift_clifford(m)
        assert lm.is_identity(modulo_pauli=True) == m.is_identity(modulo_pauli=True)
        assert np.array_equal(lm.mat, lift_matrix(m.mat))
        circ = lift_to_circuit(m)
        assert {g.name for g in circ.gates} <= {"CX", "SWAP", "PERM"}
        assert circuit_symplectic(circ).equals(lm, modulo_pauli=True)


def test_gatewise_lift_matches(rng):
    base = random_circuit(3, 12, rng, gates=("H", "S", "CX", "SWAP"))
    assert circuit_symplectic(lift_circuit_gatewise(base)).equals(
        lift_clifford(circuit_symplectic(base)), modulo_pauli=True
    )


def test_logical_action_412_cycle():
    c = code_from_paulis(C412)
    cyc = CliffordCircuit(4).append("PERM", perm=(1, 2, 3, 0))
    act = logical_action(c, cyc)
    assert act is not None and act.mat.tolist() == [[0, 1], [1, 0]]
    assert logical_action(c, CliffordCircuit(4)).is_identity(modulo_pauli=True)
    assert logical_action(c, CliffordCircuit(4).append("H", 0)) is None


def test_logical_action_513_sh_order_three():
    c = code_from_paulis(C513)
    circ = CliffordCircuit(5)
    for q in range(5):
        circ.append("H", q).append("S", q)
    act = logical_action(c, circ)
    assert act is not None
    assert not act.is_identity(modulo_pauli=True)
    assert (act @ act @ act).is_identity(modulo_pauli=True)


@pytest.mark.parametrize("seed", range(10))
def test_functoriality(seed):
    rng = np.random.default_rng(seed)
    c = random_code(4, 2, seed=seed)
    for _ in range(200):
        op = random_symplectic(4, rng)
        base = logical_action(c, op)
        if base is not None:
            break
    else:
        op = SymplecticClifford.identity(4)
        base = logical_action(c, op)
    lifted = logical_action(double_code(c), lift_clifford(op))
    assert lifted is not None
    assert lifted.n == 2 * base.n


def test_logical_clifford_signs():
    c = code_from_paulis(C412)
    assert logical_clifford(c, CliffordCircuit(4).append("X", 0)) is None
    # Z X I I is a logical operator anticommuting with I Z X I
    circ = CliffordCircuit(4).append("Z", 0).append("X", 1)
    op = logical_clifford(c, circ, np.array([pauli_parse(w).bits for w in ("ZXII", "IZXI")]))
    assert op is not None and op.is_identity(modulo_pauli=True)
    assert op.signs.tolist() == [0, 1]


@pytest.mark.parametrize("seed", range(5))
def test_synthesize_exact(seed):
    rng = np.random.default_rng(seed)
    op = circuit_symplectic(random_circuit(3, 30, rng, gates=("H", "S", "CX", "X", "Z")))
    assert circuit_symplectic(synthesize(op)) == op


@pytest.mark.parametrize("seed", range(5))
def test_tableau_agrees_with_symplectic(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    circ = random_circuit(n, 40, rng)
    tab = Tableau(n)
    for g in circ.gates:
        tab.apply(g)
    rows, signs = tab.stabilizers()
    op = circuit_symplectic(circ)
    z = np.concatenate([np.zeros((n, n), np.uint8), np.eye(n, dtype=np.uint8)], axis=1)
    img, sg = op.conjugate_rows(z, np.zeros(n, np.uint8))
    assert np.array_equal(rows, img) and np.array_equal(signs, sg)
