"""Symplectic doubles of qubit stabilizer codes, genon codes and lifted Clifford gates."""
