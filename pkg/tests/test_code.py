import numpy as np
import pytest

from symdouble import gf2
from symdouble.clifford import random_symplectic
from symdouble.code import (
    DistanceBound,
    IsotropyError,
    StabilizerCode,
    code_from_paulis,
    code_from_text,
    code_isomorphic,
    code_to_text,
    distance,
    is_css,
    parameters,
    random_code,
)
from symdouble.double import double_code
from symdouble.pauli import omega, pairing_matrix, pauli_parse

C412 = ["XYZI", "IXYZ", "ZIXY"]
C822 = ["XXIIIXXI", "IXXIIIXX", "IIXXXIIX", "IZZIZZII", "IIZZIZZI", "ZIIZIIZZ"]
C513 = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]


def _check_invariants(c: StabilizerCode):
    assert not pairing_matrix(c.checks, c.checks).any()
    assert gf2.rank(c.checks) == c.m
    assert c.k == c.n - c.m
    lb = c.logical_matrix
    if c.k:
        assert not pairing_matrix(c.checks, lb).any()
        for row in lb:
            assert not c.contains(row)
        gram = pairing_matrix(lb, lb)
        std = np.zeros((2 * c.k, 2 * c.k), np.uint8)
        for i in range(c.k):
            std[2 * i, 2 * i + 1] = std[2 * i + 1, 2 * i] = 1
        assert np.array_equal(gram, std)


def test_redundant_rows_absorbed():
    c = code_from_paulis(["XYZI", "IXYZ", "ZIXY", "YZIX"])
    assert (c.n, c.k) == (4, 1)
    _check_invariants(c)


def test_empty_and_full_codes():
    c = StabilizerCode(np.zeros((0, 2), np.uint8), 1)
    assert c.k == 1 and distance(c) == 1
    full = code_from_paulis(["Z"])
    assert full.k == 0 and full.logical_basis == []
    assert isinstance(distance(full, 1), DistanceBound)


def test_anticommuting_rows_rejected():
    with pytest.raises(IsotropyError, match="anticommute"):
        code_from_paulis(["XI", "ZI"])


def test_822_is_css():
    c = code_from_paulis(C822)
    assert (c.n, c.k) == (8, 2)
    assert is_css(c)[0]
    assert not is_css(code_from_paulis(C412))[0]
    assert is_css(StabilizerCode(np.zeros((0, 4), np.uint8), 2))[0]


def test_distances():
    assert distance(code_from_paulis(C412)) == 2
    assert distance(code_from_paulis(C513)) == 3
    assert parameters(code_from_paulis(C822)) == (8, 2, 2)


def test_logical_basis_pairs_with_reference_pair():
    c = code_from_paulis(C412)
    lx, lz = pauli_parse("ZXII"), pauli_parse("IZXI")
    assert c.commutes(lx) and c.commutes(lz)
    assert pairing_matrix(lx.bits[None], lz.bits[None])[0, 0] == 1
    _check_invariants(c)


def test_random_code_properties():
    c = random_code(1, 1, seed=3)
    assert c.paulis()[0] in ("X", "Y", "Z")
    c1, c2 = random_code(6, 4, seed=9), random_code(6, 4, seed=9)
    assert np.array_equal(c1.checks, c2.checks)
    assert c1.k == 2
    _check_invariants(c1)
    _check_invariants(random_code(4, 3, seed=1))
    with pytest.raises(ValueError):
        random_code(2, 3, seed=0)


def test_isomorphism():
    c = code_from_paulis(C412)
    assert code_isomorphic(c, c) == [0, 1, 2, 3]
    rev = c.permuted([3, 2, 1, 0])
    perm = code_isomorphic(c, rev)
    assert perm is not None and c.permuted(perm).same_space(rev)
    assert code_isomorphic(c, code_from_paulis(C513)) is None
    b = double_code(code_from_paulis(C513))
    assert parameters(b) == (10, 2, 3)


@pytest.mark.parametrize("seed", range(6))
def test_distance_invariances(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    c = random_code(n, int(rng.integers(1, n)), seed=seed)
    d = distance(c)
    perm = rng.permutation(n)
    assert distance(c.permuted(perm)) == d
    # random local Cliffords keep (n, k, d)
    checks = c.checks.copy()
    for q in range(n):
        op = random_symplectic(1, rng)
        m = op.mat
        x, z = checks[:, q].copy(), checks[:, n + q].copy()
        checks[:, q] = (m[0, 0] * x + m[0, 1] * z) % 2
        checks[:, n + q] = (m[1, 0] * x + m[1, 1] * z) % 2
    local = StabilizerCode(checks, n)
    assert parameters(local) == (n, c.k, d)


def test_text_round_trip():
    c = code_from_paulis(C412)
    text = code_to_text(c)
    assert code_from_text("# comment\n" + text).same_space(c)
    with pytest.raises(ValueError):
        code_from_text("4 2\nXYZI\n")
