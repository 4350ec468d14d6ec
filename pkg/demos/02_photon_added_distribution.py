"""Photon-number distributions of photon-added squeezed thermal states.

Adding m photons empties the levels below m and pushes the distribution
upwards; squeezing broadens it and thermal noise smooths the even/odd
structure of the squeezed vacuum.
"""

import numpy as np

from sqthermal import StateParams, mean_photon_number, normalization, pnd_table

base = StateParams(0.5, 0.6)
print(f"{'m':>2} {'norm':>14} {'<n>':>9} {'tail':>9}  P(0..8)")
for m in range(5):
    p = base.with_(m=m)
    dist = pnd_table(p)
    head = " ".join(f"{v:.3f}" for v in dist.probabilities[:9])
    print(f"{m:>2} {normalization(p):14.6f} {mean_photon_number(p):9.5f} "
          f"{dist.tail_bound:9.1e}  {head}")

print("\nsqueezed vacuum vs squeezed thermal, m = 1:")
for n_c in (0.0, 0.2):
    dist = pnd_table(StateParams(n_c, 0.8, 1), 9)
    print(f"  n_c={n_c}: ", np.array2string(dist.probabilities, precision=4))
