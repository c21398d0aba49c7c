"""Pretty good state transfer on a merge with weight sqrt(2).

The two 3-regular routing graphs on 8 vertices each have PST at pi/2.
Merging them with weights (1, sqrt(2)) destroys exact transfer, but the
parity-class approximants of sqrt(2) give times at which the fidelity gets
arbitrarily close to 1.
"""

import numpy as np

from hadpst import graphs, hadamard, pgst, spectral

L1 = np.array([
    [3, -1, -1, 0, -1, 0, 0, 0], [-1, 3, 0, -1, 0, -1, 0, 0],
    [-1, 0, 3, -1, 0, 0, -1, 0], [0, -1, -1, 3, 0, 0, 0, -1],
    [-1, 0, 0, 0, 3, -1, -1, 0], [0, -1, 0, 0, -1, 3, 0, -1],
    [0, 0, -1, 0, -1, 0, 3, -1], [0, 0, 0, -1, 0, -1, -1, 3]])
L2 = np.array([
    [3, 0, -1, -1, -1, 0, 0, 0], [0, 3, -1, -1, 0, -1, 0, 0],
    [-1, -1, 3, 0, 0, 0, -1, 0], [-1, -1, 0, 3, 0, 0, 0, -1],
    [-1, 0, 0, 0, 3, 0, -1, -1], [0, -1, 0, 0, 0, 3, -1, -1],
    [0, 0, -1, 0, -1, -1, 3, 0], [0, 0, 0, -1, -1, -1, 0, 3]])

h8 = hadamard.sylvester(3)
c1 = spectral.certify(graphs.from_laplacian(L1), h8)
c2 = spectral.certify(graphs.from_laplacian(L2), h8)
w = pgst.QuadraticIrrational.sqrt(2)

for pair in [(1, 8), (1, 11), (1, 14)]:
    cls, rule = pgst.pgst_rule(c1, c2, 1, w, *pair)
    print(f"pair {pair}: parity class {cls.value}, driven by {rule}")
    for pt in pgst.pgst_sequence(c1, c2, 1, w, *pair, count=7):
        bound = f"{pt.lower_bound:.6f}" if pt.informative else "uninformative"
        print(f"    u/v = {pt.u}/{pt.v:<6d} t = {str(pt.time):<12s} "
              f"fidelity = {pt.fidelity:.6f}  guaranteed >= {bound}")
