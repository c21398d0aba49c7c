"""Certify a few small graphs, then predict PST of their weighted merges.

Run with ``python demos/merge_walkthrough.py``.
"""

import math

from hadpst import cubelike, graphs, hadamard, pst, spectral

h8 = hadamard.sylvester(3)

cube = cubelike.build(cubelike.parse_set("e1,e2,e3"))
cert = spectral.certify(cube, h8)
print("3-cube eigenvalues:", [int(v) for v in cert.eigenvalues])
print("3-cube PST pairs:  ", pst.pst_pairs(cert).pairs)

# two disjoint K4: odd degree, every eigenvalue divisible by 4
two_k4 = cubelike.build(cubelike.parse_set("001,010,011"))
cert2 = spectral.certify(two_k4, h8)
print("2K4 eigenvalues:   ", [int(v) for v in cert2.eigenvalues])

for w1, w2 in [(1, 1), (1, 2), (2, 1), (2, 6)]:
    rep = pst.merge_pst(cert, cert2, w1, w2)
    print(f"merge at ({w1}, {w2}): {rep.verdict:8s} t = {rep.time}  rule = {rep.rule or '-'}")
    if rep.pairs:
        g = graphs.merge(cube, two_k4, w1, w2)
        p, q = rep.pairs[0]
        fid = spectral.evolve_fidelity(g, float(rep.time), p, q)
        print(f"    first pair {p}->{q}, oracle fidelity {fid:.12f}")

# a pair that fails the shared-Hadamard hypothesis
k8_minus_k3 = graphs.WeightedGraph(graphs.complete(8).weights
                                   - graphs.from_edges(8, [(0, 1), (0, 2), (1, 2)]).weights)
print("K8 - K3 with the cube:", pst.merge_hypotheses(k8_minus_k3, cube, h8))
best = max(spectral.evolve_fidelity(graphs.merge(k8_minus_k3, cube, 2, 1), math.pi / 2, j, k)
           for j in range(1, 17) for k in range(j + 1, 17))
print(f"    best pair fidelity at pi/2: {best:.4f}")
