import numpy as np
import pytest

from symdouble import gf2
from symdouble.code import code_from_paulis, css_code, parameters, random_code
from symdouble.double import (
    BlockFault,
    NotCSSError,
    ZXDuality,
    base_syndrome,
    canonical_fiber_duality,
    claim_double_is_sum,
    claim_fiber_cz,
    claim_fixed_point_free_duality,
    concat_422,
    double_check_matrix,
    double_code,
    doubled_isomorphic_to,
    doubled_syndrome_split,
    find_zx_dualities,
    is_self_dual,
    lift_fault_z,
    unwrap,
    unwrap_with_alignment,
)
from symdouble.pauli import omega, pauli_parse

C412 = ["XYZI", "IXYZ", "ZIXY"]
C822 = ["XXIIIXXI", "IXXIIIXX", "IIXXXIIX", "IZZIZZII", "IIZZIZZI", "ZIIZIIZZ"]
C513 = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]


def test_golden_double_matrix():
    h = code_from_paulis(C412).checks
    expected = np.array([pauli_parse(r).bits for r in C822])
    assert np.array_equal(double_check_matrix(h), expected)


def test_double_examples():
    assert double_check_matrix(np.zeros((0, 6), np.uint8)).shape == (0, 12)
    assert parameters(double_code(code_from_paulis(C412))) == (8, 2, 2)
    assert parameters(double_code(code_from_paulis(C513))) == (10, 2, 3)
    d = double_code(code_from_paulis(["Z"]))
    assert d.paulis() == ["IX", "ZI"] or sorted(d.paulis()) == ["IX", "ZI"]
    assert d.k == 0
    with pytest.raises(ValueError):
        double_check_matrix(np.array([[1, 0], [0, 1]], np.uint8))


@pytest.mark.parametrize("seed", range(8))
def test_doubled_isotropy(seed):
    c = random_code(6, 3, seed=seed)
    h = double_check_matrix(c.checks)
    assert not gf2.matmul(gf2.matmul(h, omega(12)), h.T).any()


def test_dualities():
    dc = double_code(code_from_paulis(C412))
    taus = find_zx_dualities(dc)
    assert canonical_fiber_duality(4) in taus
    assert all(t.is_involution and t.is_fixed_point_free for t in taus)
    assert len(find_zx_dualities(double_code(code_from_paulis(C513)))) == 6
    assert find_zx_dualities(css_code(np.array([[1, 1, 1, 1]], np.uint8), np.zeros((0, 4), np.uint8))) == []
    with pytest.raises(NotCSSError):
        find_zx_dualities(code_from_paulis(C412))


def test_cycle_notation():
    tau = ZXDuality.from_cycles("(1 5)(2 6)(3 7)(4 8)", 8)
    assert tau == canonical_fiber_duality(4)
    assert tau.to_cycles() == "(1 5)(2 6)(3 7)(4 8)"
    with pytest.raises(ValueError):
        ZXDuality.from_cycles("(1 9)", 8)


def test_unwrap_10_2_3():
    dc = double_code(code_from_paulis(C513))
    params = sorted(parameters(unwrap(dc, t)) for t in find_zx_dualities(dc))
    assert params == [(5, 1, 2)] * 5 + [(5, 1, 3)]


@pytest.mark.parametrize("seed", range(10))
def test_unwrap_round_trip(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    c = random_code(n, int(rng.integers(1, n + 1)), seed=seed)
    dc = double_code(c)
    base, align = unwrap_with_alignment(dc, canonical_fiber_duality(n))
    assert base.same_space(c)
    assert doubled_isomorphic_to(dc, base, align)


def test_unwrap_rejects_non_duality():
    dc = double_code(code_from_paulis(C412))
    good = set(find_zx_dualities(dc))
    bad = next(
        ZXDuality(p)
        for p in [(1, 0, 3, 2, 5, 4, 7, 6), (2, 3, 0, 1, 6, 7, 4, 5), (7, 6, 5, 4, 3, 2, 1, 0), (4, 5, 6, 7, 1, 0, 3, 2)]
        if ZXDuality(p) not in good and ZXDuality(p).is_involution
    )
    with pytest.raises(ValueError):
        unwrap(dc, bad)


def test_concat_422():
    dc = double_code(code_from_paulis(C412))
    big = concat_422(dc, canonical_fiber_duality(4))
    assert (big.n, big.k) == (16, 2)
    assert is_self_dual(big)
    toric = code_from_paulis(C822)
    big = concat_422(toric, find_zx_dualities(toric)[0])
    assert big.n == 16
    assert all(not (r[:16].any() and r[16:].any()) for r in big.checks)


def test_base_syndrome_examples():
    c = code_from_paulis(C412)
    zero = BlockFault(np.zeros(4, np.uint8), np.zeros(4, np.uint8))
    assert not base_syndrome(c, zero).any()
    f = BlockFault([1, 0, 0, 0], [0, 0, 0, 0])
    assert base_syndrome(c, f).tolist() == [0, 0, 1]
    row = c.checks[0]
    assert not base_syndrome(c, BlockFault(row[:4], row[4:])).any()


def test_syndrome_split_examples(rng):
    c = code_from_paulis(C412)
    dc = double_code(c)
    s_x, s_z = doubled_syndrome_split(dc, np.zeros(16, np.uint8))
    assert not s_x.any() and not s_z.any()
    for _ in range(50):
        f = BlockFault(rng.integers(0, 2, 4), rng.integers(0, 2, 4))
        s_x, s_z = doubled_syndrome_split(dc, lift_fault_z(f))
        assert np.array_equal(s_x, base_syndrome(c, f)) and not s_z.any()
    for i in range(4):
        zz = np.zeros(16, np.uint8)
        zz[8 + i] = zz[12 + i] = 1
        y = BlockFault(np.eye(4, dtype=np.uint8)[i], np.eye(4, dtype=np.uint8)[i])
        assert np.array_equal(doubled_syndrome_split(dc, zz)[0], base_syndrome(c, y))


@pytest.mark.parametrize("seed", range(10))
def test_claims(seed):
    c = random_code(4, int(np.random.default_rng(seed).integers(1, 5)), seed=seed)
    assert claim_double_is_sum(c).holds
    assert claim_fiber_cz(c).holds
    assert claim_fixed_point_free_duality(c).holds


def test_double_is_sum_for_css():
    ev = claim_double_is_sum(code_from_paulis(["XXXX", "ZZZZ"]))
    assert ev.holds and ev.detail["css"] and ev.detail["permutation"] is not None
    ev = claim_double_is_sum(code_from_paulis(C412))
    assert ev.holds and not ev.detail["css"] and ev.detail["permutation"] is None
