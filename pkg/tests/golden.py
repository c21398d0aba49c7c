"""Transcribed reference matrices and spectra used by the golden tests."""

import numpy as np

# 4-cycle 1-2-3-4 and the graph with edges 1-2, 1-3, 2-4, 3-4, plus their merge
FIG_L1 = np.array([
    [2, -1, 0, -1],
    [-1, 2, -1, 0],
    [0, -1, 2, -1],
    [-1, 0, -1, 2],
])
FIG_L2 = np.array([
    [2, -1, -1, 0],
    [-1, 2, 0, -1],
    [-1, 0, 2, -1],
    [0, -1, -1, 2],
])
FIG_L3 = np.array([
    [4, -1, 0, -1, 0, -1, -1, 0],
    [-1, 4, -1, 0, -1, 0, 0, -1],
    [0, -1, 4, -1, -1, 0, 0, -1],
    [-1, 0, -1, 4, 0, -1, -1, 0],
    [0, -1, -1, 0, 4, -1, 0, -1],
    [-1, 0, 0, -1, -1, 4, -1, 0],
    [-1, 0, 0, -1, 0, -1, 4, -1],
    [0, -1, -1, 0, -1, 0, -1, 4],
])

# two 3-regular graphs on 8 vertices used for routing by pretty good transfer
ROUTING_L1 = np.array([
    [3, -1, -1, 0, -1, 0, 0, 0],
    [-1, 3, 0, -1, 0, -1, 0, 0],
    [-1, 0, 3, -1, 0, 0, -1, 0],
    [0, -1, -1, 3, 0, 0, 0, -1],
    [-1, 0, 0, 0, 3, -1, -1, 0],
    [0, -1, 0, 0, -1, 3, 0, -1],
    [0, 0, -1, 0, -1, 0, 3, -1],
    [0, 0, 0, -1, 0, -1, -1, 3],
])
ROUTING_L2 = np.array([
    [3, 0, -1, -1, -1, 0, 0, 0],
    [0, 3, -1, -1, 0, -1, 0, 0],
    [-1, -1, 3, 0, 0, 0, -1, 0],
    [-1, -1, 0, 3, 0, 0, 0, -1],
    [-1, 0, 0, 0, 3, 0, -1, -1],
    [0, -1, 0, 0, 0, 3, -1, -1],
    [0, 0, -1, 0, -1, -1, 3, 0],
    [0, 0, 0, -1, -1, -1, 0, 3],
])
ROUTING_PAIRS_L1 = [(1, 8), (2, 7), (3, 6), (4, 5)]
ROUTING_PAIRS_L2 = [(1, 6), (2, 5), (3, 8), (4, 7)]
ROUTING_PAIRS_SUM = [(1, 3), (2, 4), (5, 7), (6, 8)]

# K8 with the triangle on vertices 1..3 removed, merged with the 3-cube at (2, 1)
COUNTEREXAMPLE_16 = np.array([
    [13, 0, 0, -2, -2, -2, -2, -2, 0, -1, -1, 0, -1, 0, 0, 0],
    [0, 13, 0, -2, -2, -2, -2, -2, -1, 0, 0, -1, 0, -1, 0, 0],
    [0, 0, 13, -2, -2, -2, -2, -2, -1, 0, 0, -1, 0, 0, -1, 0],
    [-2, -2, -2, 17, -2, -2, -2, -2, 0, -1, -1, 0, 0, 0, 0, -1],
    [-2, -2, -2, -2, 17, -2, -2, -2, -1, 0, 0, 0, 0, -1, -1, 0],
    [-2, -2, -2, -2, -2, 17, -2, -2, 0, -1, 0, 0, -1, 0, 0, -1],
    [-2, -2, -2, -2, -2, -2, 17, -2, 0, 0, -1, 0, -1, 0, 0, -1],
    [-2, -2, -2, -2, -2, -2, -2, 17, 0, 0, 0, -1, 0, -1, -1, 0],
    [0, -1, -1, 0, -1, 0, 0, 0, 13, 0, 0, -2, -2, -2, -2, -2],
    [-1, 0, 0, -1, 0, -1, 0, 0, 0, 13, 0, -2, -2, -2, -2, -2],
    [-1, 0, 0, -1, 0, 0, -1, 0, 0, 0, 13, -2, -2, -2, -2, -2],
    [0, -1, -1, 0, 0, 0, 0, -1, -2, -2, -2, 17, -2, -2, -2, -2],
    [-1, 0, 0, 0, 0, -1, -1, 0, -2, -2, -2, -2, 17, -2, -2, -2],
    [0, -1, 0, 0, -1, 0, 0, -1, -2, -2, -2, -2, -2, 17, -2, -2],
    [0, 0, -1, 0, -1, 0, 0, -1, -2, -2, -2, -2, -2, -2, 17, -2],
    [0, 0, 0, -1, 0, -1, -1, 0, -2, -2, -2, -2, -2, -2, -2, 17],
])

# spectrum of the order-12 graph merged with K12 at weights (5, 2), certificate order
ORDER12_MERGE_EIGENVALUES = [0, 54, 64, 54, 64, 64, 64, 54, 54, 54, 44, 54,
                             44, 50, 60, 50, 60, 60, 60, 50, 50, 50, 40, 50]
