"""Exact weighted graphs and the composition operators used to build them.

Vertices are 0-based in the API; the JSON format and the CLI use 1-based
labels.
"""

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _exact
from .errors import DomainError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected graph with exact rational edge weights.

    ``weights[j, k]`` is the weight of edge ``{j, k}`` (0 means no edge). The
    matrix is symmetric with zero diagonal; loops are not representable.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = _exact.fraction_matrix(self.weights)
        if w.shape[0] != w.shape[1]:
            raise DomainError("weight matrix must be square")
        if any(w[i, i] != 0 for i in range(w.shape[0])):
            raise DomainError("weight matrix must have zero diagonal")
        if not (w == w.T).all():
            raise DomainError("weight matrix must be symmetric")
        object.__setattr__(self, "weights", w)

    @property
    def n(self):
        return self.weights.shape[0]

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and bool((self.weights == other.weights).all())

    def __hash__(self):
        return hash((self.n, tuple(self.weights.flat)))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, edges={len(self.edges())})"

    def adjacency(self):
        return self.weights

    def laplacian(self):
        return laplacian(self)

    def edges(self):
        """List of ``(j, k, w)`` with ``j < k`` and ``w != 0``, sorted."""
        n = self.n
        return [(j, k, self.weights[j, k]) for j in range(n) for k in range(j + 1, n)
                if self.weights[j, k] != 0]

    def is_integer_weighted(self):
        return all(v.denominator == 1 for v in self.weights.flat)

    def is_unweighted(self):
        return all(v in (0, 1) for v in self.weights.flat)

    def is_empty(self):
        return not any(v != 0 for v in self.weights.flat)


def from_edges(n, edges):
    """Build a graph from ``(j, k)`` or ``(j, k, w)`` tuples (0-based)."""
    w = _exact.zeros(n)
    for e in edges:
        j, k = int(e[0]), int(e[1])
        wt = _exact.as_fraction(e[2]) if len(e) > 2 else ONE
        if j == k:
            raise DomainError("loops are not allowed")
        w[j, k] = w[k, j] = wt
    return WeightedGraph(w)


def from_laplacian(lap):
    lap = _exact.fraction_matrix(lap)
    if any(sum(row) != 0 for row in lap):
        raise DomainError("Laplacian rows must sum to zero")
    w = -lap
    for i in range(lap.shape[0]):
        w[i, i] = ZERO
    return WeightedGraph(w)


def empty(n):
    return WeightedGraph(_exact.zeros(n))


def complete(n):
    return from_edges(n, [(j, k) for j in range(n) for k in range(j + 1, n)])


def cycle(n):
    return from_edges(n, [(j, (j + 1) % n) for j in range(n)])


def path(n):
    return from_edges(n, [(j, j + 1) for j in range(n - 1)])


def perfect_matching(n):
    if n % 2:
        raise DomainError("a perfect matching needs an even vertex count")
    return from_edges(n, [(j, j + 1) for j in range(0, n, 2)])


def laplacian(g):
    """``D - A`` as an exact Fraction matrix; every row sums to zero."""
    lap = -g.weights.copy()
    for i in range(g.n):
        lap[i, i] = sum(g.weights[i], ZERO)
    lap.setflags(write=False)
    return lap


def degree_profile(g):
    """Return ``(is_regular, degree)``.

    ``degree`` is the common weighted degree for a regular graph and the list
    of per-vertex weighted degrees otherwise.
    """
    degs = [sum(row, ZERO) for row in g.weights]
    if len(set(degs)) <= 1:
        return True, degs[0] if degs else ZERO
    return False, degs


def _require_unweighted(*graphs):
    for g in graphs:
        if not g.is_unweighted():
            raise DomainError("operation is defined for unweighted graphs only")


def complement(g):
    _require_unweighted(g)
    n = g.n
    w = _exact.zeros(n)
    for j in range(n):
        for k in range(n):
            if j != k and g.weights[j, k] == 0:
                w[j, k] = ONE
    return WeightedGraph(w)


def disjoint_union(g1, g2):
    n1, n2 = g1.n, g2.n
    w = _exact.zeros(n1 + n2)
    w[:n1, :n1] = g1.weights
    w[n1:, n1:] = g2.weights
    return WeightedGraph(w)


def join(g1, g2):
    """Disjoint union plus every edge between the two parts (unweighted)."""
    _require_unweighted(g1, g2)
    n1 = g1.n
    w = disjoint_union(g1, g2).weights.copy()
    w[:n1, n1:] = ONE
    w[n1:, :n1] = ONE
    return WeightedGraph(w)


def cartesian_product(g1, g2):
    """Cartesian product, vertex ``(a, b)`` at index ``a * g2.n + b``.

    Edge weights are inherited from the factor along which the edge runs, so
    the Laplacian is ``L1 (x) I + I (x) L2``.
    """
    n1, n2 = g1.n, g2.n
    w = _exact.zeros(n1 * n2)
    for a in range(n1):
        for b in range(n2):
            u = a * n2 + b
            for b2 in range(n2):
                if g2.weights[b, b2] != 0:
                    w[u, a * n2 + b2] = g2.weights[b, b2]
            for a2 in range(n1):
                if g1.weights[a, a2] != 0:
                    w[u, a2 * n2 + b] = g1.weights[a, a2]
    return WeightedGraph(w)


def merge(g1, g2, w1=1, w2=1, loops=None):
    """Weighted merge of two graphs on the same vertex count.

    The result has 2n vertices and Laplacian
    ``[[w1 L1 + w2 D2, -w2 A2], [-w2 A2, w1 L1 + w2 D2]]``.

    ``loops`` optionally gives self-loop weights for ``g2``. A loop of weight
    ``c`` at vertex j contributes ``c`` to ``D2`` and to ``A2[j, j]``; in the
    merged graph it becomes the edge ``{j, n + j}``.
    """
    if g1.n != g2.n:
        raise DomainError("merge needs graphs on the same number of vertices")
    n = g1.n
    w1 = _exact.as_fraction(w1)
    w2 = _exact.as_fraction(w2)
    a2 = g2.weights.copy()
    if loops is not None:
        if len(loops) != n:
            raise DomainError("one loop weight per vertex is required")
        for j, c in enumerate(loops):
            a2[j, j] = _exact.as_fraction(c)
    w = _exact.zeros(2 * n)
    w[:n, :n] = g1.weights * w1
    w[n:, n:] = g1.weights * w1
    w[:n, n:] = a2 * w2
    w[n:, :n] = a2 * w2
    return WeightedGraph(w)


def double_cover(g1, g2):
    """Graph with adjacency ``[[A1, A2], [A2, A1]]``."""
    if g1.n != g2.n:
        raise DomainError("double cover needs graphs on the same vertex set")
    return merge(g1, g2, 1, 1)


def scale(g, c):
    c = _exact.as_fraction(c)
    if c == 0:
        raise DomainError("scale factor must be nonzero")
    return WeightedGraph(g.weights * c)


def add(g1, g2):
    """Graph whose Laplacian is ``L1 + L2``."""
    if g1.n != g2.n:
        raise DomainError("add needs graphs on the same number of vertices")
    return WeightedGraph(g1.weights + g2.weights)


def _neighbors(g):
    return [[k for k in range(g.n) if g.weights[j, k] != 0] for j in range(g.n)]


def components(g):
    """Connected components by breadth-first search."""
    nbrs = _neighbors(g)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g):
    return len(components(g)) <= 1


def is_bipartite(g):
    """Two-colour the support of the weight matrix by BFS."""
    nbrs = _neighbors(g)
    colour = [None] * g.n
    for s in range(g.n):
        if colour[s] is not None:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if colour[v] is None:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return False
    return True


# -- JSON ---------------------------------------------------------------------

def to_json_obj(g):
    return {"n": g.n,
            "edges": [[j + 1, k + 1, _exact.fraction_str(w)] for j, k, w in g.edges()]}


def from_json_obj(obj):
    try:
        n = int(obj["n"])
        edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed graph JSON: {exc}") from None
    out = []
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise DomainError(f"bad edge {e!r}")
        wt = _exact.as_fraction(e[2]) if len(e) > 2 else ONE
        out.append((i - 1, j - 1, wt))
    return from_edges(n, out)


def dumps(g):
    return json.dumps(to_json_obj(g))


def loads(text):
    return from_json_obj(json.loads(text))
