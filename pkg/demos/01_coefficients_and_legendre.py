"""Coefficients of a squeezed thermal state and the scaled Legendre sequence.

The five coefficients A..E fix every closed form in the package.  The
sequence W_k(p, q) = q^(k/2) P_k(p / sqrt(q)) stays real even when q < 0,
which happens for the photon-subtracted squeezed vacuum.
"""

import numpy as np

from sqthermal import StateParams, coefficients, legendre_p, scaled_sequence

for n_c, r in [(1.0, 0.5), (0.0, 0.8), (3.0, -0.5)]:
    c = coefficients(StateParams(n_c, r))
    print(f"n_c={n_c:<4} r={r:<5} A={c.A:.6f} B={c.B:.6f} C={c.C:+.6f} D={c.D:.6f} E={c.E:.6f}")
    print(f"    A - 2B + C = {c.A - 2 * c.B + c.C:.15f}   D - E = {c.D - c.E:.15f}")

# positive q: the sequence is an ordinary rescaled Legendre polynomial
p, q = 1.3, 2.0
seq = scaled_sequence(p, q, 6)
direct = [q ** (k / 2) * legendre_p(k, p / np.sqrt(q)) for k in range(7)]
print("\nW_k(1.3, 2.0):      ", np.round(seq.values, 10))
print("q^(k/2) P_k(p/sqrt q):", np.round(direct, 10))

# negative q: analytic continuation, still real
print("W_k(0.4, -0.9):     ", np.round(scaled_sequence(0.4, -0.9, 6).values, 10))

# very long sequences are kept as mantissa * 2**exponent
big = scaled_sequence(50.0, 100.0, 2000)
print(f"\nlog|W_2000(50, 100)| = {big.log_abs(2000):.6f}  (the plain value overflows a double)")
