"""Photon subtraction, and why the exponent in its distribution matters.

Two readings of the subtracted-state distribution differ only in the power
of C/A: (m + n)/2 or m + n/2.  A brute-force Fock-space computation decides
between them.
"""

import numpy as np

from sqthermal import StateParams, pnd_table
from sqthermal.analytics import pnd_pssts_literal
from sqthermal.fock_oracle import oracle_pnd_certified

for p in (StateParams(1.0, 0.4, 2, "sub"), StateParams(0.0, 0.2, 1, "sub")):
    closed = pnd_table(p, 8).raw
    oracle = oracle_pnd_certified(p, 8).value
    literal = np.array([pnd_pssts_literal(p, n) for n in range(9)])
    print(f"n_c={p.n_c}, r={p.r}, m={p.m}")
    print("  (m+n)/2 exponent:", np.array2string(closed, precision=6))
    print("  m+n/2 exponent:  ", np.array2string(literal.real, precision=6))
    print("  Fock oracle:     ", np.array2string(oracle, precision=6))
    print(f"  max |closed - oracle| = {np.abs(closed - oracle).max():.1e}, "
          f"max |literal - oracle| = {np.abs(literal - oracle).max():.2f}\n")

# subtraction from a squeezed vacuum flips its parity
p = StateParams(0.0, 0.7, 1, "sub")
print("squeezed vacuum minus one photon:", np.array2string(pnd_table(p, 7).probabilities, precision=4))
