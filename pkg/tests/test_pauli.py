import itertools

import numpy as np
import pytest

from symdouble.pauli import SymplecticVector, pauli_parse, pauli_render, pauli_weight, symplectic_pairing


def test_parse_examples():
    v = pauli_parse("YZ")
    assert v.x_part.tolist() == [1, 0] and v.z_part.tolist() == [1, 1]
    assert not pauli_parse("II").bits.any()
    v = pauli_parse("X.ZY")
    assert v.x_part.tolist() == [1, 0, 0, 1] and v.z_part.tolist() == [0, 0, 1, 1]
    with pytest.raises(ValueError):
        pauli_parse("XQ")


def test_pairing_examples():
    assert symplectic_pairing(pauli_parse("X"), pauli_parse("Z")) == 1
    assert symplectic_pairing(pauli_parse("XYZI"), pauli_parse("IXYZ")) == 0
    with pytest.raises(ValueError):
        symplectic_pairing(pauli_parse("X"), pauli_parse("XX"))


def test_weight_examples():
    assert pauli_weight(pauli_parse("YZ")) == 2
    assert pauli_weight(pauli_parse("IIII")) == 0
    assert pauli_weight(pauli_parse("XYZI")) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exhaustive_round_trip_and_weight(n):
    for letters in itertools.product("IXYZ", repeat=n):
        s = "".join(letters)
        v = pauli_parse(s)
        assert pauli_render(v) == s
        assert pauli_weight(v) == sum(c != "I" for c in s)
        assert symplectic_pairing(v, v) == 0


def test_pairing_bilinear(rng):
    for _ in range(50):
        u, v, w = (SymplecticVector(rng.integers(0, 2, 10).astype(np.uint8)) for _ in range(3))
        assert symplectic_pairing(u + v, w) == symplectic_pairing(u, w) ^ symplectic_pairing(v, w)
        assert symplectic_pairing(u, v) == symplectic_pairing(v, u)
