"""Reference QASM programs for the three hardware protocols (length-2
randomized benchmarking on [[4,1,2]], the [[8,2,2]] CX benchmark on |01>
and the [[10,2,3]] gate on |+->)."""

RB_412_LISTING = """\
OPENQASM 2.0;
include "hqslib1.inc";

qreg q[4];
creg m[4];

reset q;

// prepare logical |0> state
h q[1]; h q[0]; cy q[0], q[1]; h q[2];
cy q[1], q[2]; cx q[0], q[3]; h q[0]; x q[0]; z q[0];
barrier q;

// First logical Clifford
x q[2]; x q[0];
// P(0, 2, 1, 3)
// labels = [0, 2, 1, 3]
s q[3]; s q[1]; h q[1]; h q[2]; s q[2]; s q[0]; h q[0]; s q[0];
// P(0, 3, 2, 1)
// labels = [0, 3, 1, 2]
x q[1]; x q[0]; h q[2]; h q[1]; h q[3]; h q[0]; x q[1]; z q[3]; x q[1]; x q[0];
// P(0, 2, 1, 3)
// labels = [0, 1, 3, 2]
s q[2]; s q[3]; h q[3]; h q[1]; s q[1]; s q[0]; h q[0]; s q[0];
// P(0, 3, 2, 1)
// labels = [0, 2, 3, 1]
x q[3]; x q[0]; h q[1]; h q[3]; h q[2]; h q[0]; x q[3]; z q[2]; x q[2]; z q[0];
barrier q;

// Second logical Clifford
x q[3]; x q[0];
// P(0, 2, 1, 3)
// labels = [0, 3, 2, 1]
s q[1]; s q[2]; h q[2]; h q[3]; s q[3]; s q[0]; h q[0]; s q[0];
// P(0, 3, 2, 1)
// labels = [0, 1, 2, 3]
x q[2]; x q[0]; h q[3]; h q[2]; h q[1]; 
h q[0]; x q[2]; z q[1]; x q[2]; z q[1]; x q[1]; z q[0];
barrier q;

// decode
cy q[0], q[1]; cz q[0], q[2]; h q[0];
cy q[1], q[2]; cz q[1], q[3]; h q[1];
cz q[2], q[0]; cy q[2], q[3]; h q[2];
sdg q[3]; h q[3]; s q[3];

// inverse of logical Clifford
x q[3]; z q[3]; h q[3]; sdg q[3];
x q[3]; h q[3]; sdg q[3]; h q[3];
sdg q[3];

measure q -> m;
// final qubit order: [0, 1, 2, 3]
"""

CX_822_LISTING = """\
OPENQASM 2.0;
include "hqslib1.inc";

qreg q[8];
creg m[8];

reset q;

h q[7]; h q[6]; h q[5];
cx q[7], q[4]; cx q[6], q[4]; cx q[5], q[4];
cx q[4], q[3]; cx q[6], q[2]; cx q[5], q[2];
cx q[3], q[2]; cx q[5], q[1]; cx q[4], q[1];
cx q[2], q[1]; cx q[5], q[0];
x q[4]; x q[1];
barrier q;

// P(0, 2, 1, 3, 4, 6, 5, 7)
// labels = [0, 2, 1, 3, 4, 6, 5, 7]
cx q[4], q[0];
// P(0, 5, 2, 3, 4, 1, 6, 7)
// labels = [0, 6, 1, 3, 4, 2, 5, 7]
cx q[6], q[2];
cx q[1], q[5];
// P(0, 1, 6, 3, 4, 5, 2, 7)
// labels = [0, 6, 5, 3, 4, 2, 1, 7]
cx q[3], q[7];
barrier q;

x q[4]; x q[6]; x q[7]; x q[0];
measure q -> m;

// final qubit order: [0, 6, 5, 3, 4, 2, 1, 7]
"""

G_1023_LISTING = """\
OPENQASM 2.0;
include "hqslib1.inc";

qreg q[10];
creg m[10];

reset q;

h q[9]; h q[8]; h q[7]; h q[6]; h q[5]; h q[4];
cx q[7], q[3]; cx q[5], q[3]; cx q[4], q[3];
cx q[9], q[2]; cx q[6], q[2]; cx q[3], q[2];
cx q[8], q[1]; cx q[5], q[1]; cx q[2], q[1];
cx q[8], q[0]; cx q[6], q[0]; cx q[4], q[0];
barrier q;

z q[5]; z q[4]; z q[1];
barrier q;

// P(0, 1, 2, 3, 9, 5, 6, 7, 8, 4)
// labels = [0, 1, 2, 3, 9, 5, 6, 7, 8, 4]
cx q[9], q[4];
// P(0, 1, 2, 8, 4, 5, 6, 7, 3, 9)
// labels = [0, 1, 2, 8, 9, 5, 6, 7, 3, 4]
cx q[8], q[3];
// P(0, 1, 7, 3, 4, 5, 6, 2, 8, 9)
// labels = [0, 1, 7, 8, 9, 5, 6, 2, 3, 4]
cx q[7], q[2];
// P(0, 6, 2, 3, 4, 5, 1, 7, 8, 9)
// labels = [0, 6, 7, 8, 9, 5, 1, 2, 3, 4]
cx q[6], q[1];
// P(5, 1, 2, 3, 4, 0, 6, 7, 8, 9)
// labels = [5, 6, 7, 8, 9, 0, 1, 2, 3, 4]
cx q[5], q[0];
barrier q;

z q[9]; z q[8]; z q[7]; z q[6]; z q[5];
barrier q;

h q[4]; h q[3]; h q[2]; h q[1]; h q[0];
h q[9]; h q[8]; h q[7]; h q[6]; h q[5];
measure q -> m;

// final qubit order: [5, 6, 7, 8, 9, 0, 1, 2, 3, 4]
"""
