"""Timing-error sensitivity and eigenvalue-count constraints for sparse PST graphs."""

import cmath
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import cubelike
from . import pst as _pst
from . import spectral
from .errors import CapacityError, DomainError, InvariantError, RangeError, UnsupportedError
from .pgst import fidelity_perturbation_bound  # noqa: F401  (re-exported)
from .spectral import HALF_PI, PiTime

MAX_CORPUS_K = 5
MAX_EIGENCOUNT_R = 4


# -- timing errors -------------------------------------------------------------

def ring_sum(cert, h):
    """``(1/n) |sum_l exp(i h lambda_l)|`` from the exact eigenvalues."""
    h = float(h)
    return abs(sum(cmath.exp(1j * h * float(v)) for v in cert.eigenvalues)) / cert.n


def ring_sum_direct(g, h, vertex=1):
    """``|exp(i h L)[v, v]|`` from a generic eigensolver (no Hadamard structure)."""
    prop = spectral.Propagator(g)
    return float(abs(prop.operator(float(h))[vertex - 1, vertex - 1]))


@dataclass(frozen=True)
class TimingDrop:
    drop: float
    ring_sum: float
    predicted: float
    pair: tuple


def timing_drop(cert, t0=HALF_PI, h=0.0, pair=None):
    """Fidelity lost when reading out at ``t0 + h`` instead of ``t0``.

    ``pair`` defaults to the first PST pair of the mod-4 sweep. ``predicted``
    is ``1 - ring_sum**2``, which equals the drop for Hadamard-diagonalizable
    graphs with PST at ``t0``.
    """
    h = float(h)
    lam_max = max(float(v) for v in cert.eigenvalues)
    if lam_max > 0 and abs(h) >= math.pi / lam_max:
        raise RangeError(f"|h| must be below pi/lambda_max = {math.pi / lam_max:.6g}")
    if not isinstance(t0, PiTime):
        t0 = PiTime.parse(str(t0))
    if pair is None:
        rep = _pst.pst_pairs(cert, check=False)
        if rep.verdict != "PST":
            raise DomainError("graph has no PST pair at pi/2; pass a pair explicitly")
        pair = rep.pairs[0]
    j, k = pair
    prop = spectral.Propagator(cert.graph)
    p0 = prop.probabilities(float(t0))[j - 1, k - 1]
    p1 = prop.probabilities(float(t0) + h)[j - 1, k - 1]
    rs = ring_sum(cert, h)
    return TimingDrop(float(p0 - p1), rs, 1.0 - rs * rs, (j, k))


# -- trace identities ----------------------------------------------------------

def trace_identities(cert):
    """Check the trace relations of an unweighted r-regular certified graph.

    Both sides are computed exactly: the power sums of the certificate's
    eigenvalues against traces of powers of the integer adjacency matrix.
    Returns a dict of booleans.
    """
    g = cert.graph
    if not g.is_unweighted():
        raise DomainError("trace identities are stated for unweighted graphs")
    n = g.n
    r = int(cert.degree)
    a = np.array([[int(v) for v in row] for row in g.adjacency()], dtype=object)
    tr_a3 = int(np.trace(a @ a @ a))
    lam = [int(v) for v in cert.eigenvalues]
    s1, s2, s3 = (sum(v ** p for v in lam) for p in (1, 2, 3))
    return {
        "trace_L": s1 == r * n,
        "trace_L2": s2 == r * n * (r + 1),
        "trace_L3": s3 == r ** 3 * n + 3 * r * r * n - tr_a3,
        "trace_A3_nonnegative": tr_a3 >= 0,
        "gershgorin": all(0 <= v <= 2 * r for v in lam),
    }


# -- eigenvalue counts ---------------------------------------------------------

@dataclass(frozen=True)
class EigencountSystem:
    """Counts ``c[2j]`` of Laplacian eigenvalue 2j, as affine functions of n.

    ``counts[2j] = (alpha, beta)`` means ``c_{2j} = alpha * n + beta``. ``n``
    is the forced order when the system pins it down, else None, and
    ``n_max`` is the bound from the cubic trace inequality.
    """

    r: int
    counts: dict
    n: int = None
    n_max: int = None
    free: bool = field(default=False)

    def count(self, eig, n=None):
        n = self.n if n is None else n
        alpha, beta = self.counts[eig]
        return alpha * n + beta

    def satisfied_by(self, n, observed):
        """True iff the observed counts (dict eigenvalue -> count) fit the system."""
        if self.n is not None and n != self.n:
            return False
        if self.n_max is not None and n > self.n_max:
            return False
        return all(self.count(e, n) == observed.get(e, 0) for e in self.counts)

    def to_json_obj(self):
        return {"r": self.r, "n": self.n, "n_max": self.n_max,
                "counts": {str(e): [str(a), str(b)] for e, (a, b) in self.counts.items()}}


def _rref(rows):
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    ncols = len(m[0])
    pivots, row = [], 0
    for col in range(ncols - 1):
        pr = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        piv = m[row][col]
        m[row] = [v / piv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    for r in m[row:]:
        if r[-1] != 0:
            raise InvariantError("eigencount system is inconsistent")
    return m[:row], pivots


def eigencount_equations(r):
    """Augmented rows over the unknowns ``(c_2, ..., c_2r, n)``."""
    eigs = [2 * j for j in range(1, r + 1)]
    rows = [
        [1] * r + [-1, -1],                                   # sum c = n - 1
        eigs + [-r, 0],                                       # sum 2j c = r n
        [e * e for e in eigs] + [-r * (r + 1), 0],            # sum (2j)^2 c = r n (r+1)
        [1 if (e // 2) % 2 else -1 for e in eigs] + [0, 1],   # mod-4 classes split evenly
    ]
    return eigs, rows


def eigencount_solve(r):
    """Solve the eigenvalue-count system for an r-regular PST graph (r <= 4)."""
    if r < 1:
        raise DomainError("r must be positive")
    if r > MAX_EIGENCOUNT_R:
        raise UnsupportedError("the count equations do not determine n beyond r = 4")
    eigs, rows = eigencount_equations(r)
    red, pivots = _rref(rows)
    ncol = r + 1
    n_col = r
    free = [c for c in range(ncol) if c not in pivots]
    if not free:
        sol = {pivots[i]: red[i][-1] for i in range(len(pivots))}
        n = sol[n_col]
        if n.denominator != 1:
            raise InvariantError("forced order is not an integer")
        counts = {e: (Fraction(0), sol[i]) for i, e in enumerate(eigs)}
        return EigencountSystem(r, counts, int(n), int(n))
    if free != [n_col]:
        raise UnsupportedError("more than one free parameter")
    counts = {}
    for i, col in enumerate(pivots):
        # c_col + coef * n = rhs
        counts[eigs[col]] = (-red[i][n_col], red[i][-1])
    # cubic trace inequality: sum (2j)^3 c <= r^2 n (r + 3)
    alpha = sum(e ** 3 * counts[e][0] for e in eigs) - r * r * (r + 3)
    beta = sum(e ** 3 * counts[e][1] for e in eigs)
    if alpha <= 0:
        raise InvariantError("cubic inequality does not bound n from above")
    n_max = Fraction(-beta, 1) / alpha
    return EigencountSystem(r, counts, None, int(math.floor(n_max)), free=True)


# -- sparsity corpus -----------------------------------------------------------

def _mod4_pst(eigs, d):
    """Cubelike mod-4 sweep in character form: any j with PST from vertex 0."""
    n = 1 << d
    for s in range(1, n):
        if all((e // 2) % 2 == bin(s & x).count("1") % 2 for x, e in enumerate(eigs)):
            return s
    return None


def _corpus_chunk(args):
    r, d, first = args
    out, seen = [], 0
    for rest in itertools.combinations(range(first + 1, 1 << d), r - 1):
        c = cubelike.ConnectionSet(d, (first,) + rest)
        if not cubelike.spans(c):
            continue
        seen += 1
        eigs = cubelike.eigenvalues(c)
        s = _mod4_pst(eigs, d)
        if s is not None:
            out.append((c, s, eigs))
    return seen, out


def verify_sparsity_corpus(r, max_k, workers=1):
    """Check the order bound ``n <= 2**r`` over connected r-regular cubelike PST graphs.

    The corpus is every connection set of size r spanning Z_2^k for
    ``k <= max_k``. PST is decided with the mod-4 test on the character
    eigenvalues. Each hit's eigenvalue counts are checked against
    :func:`eigencount_solve`. Returns a JSON-ready dict.
    """
    if max_k > MAX_CORPUS_K:
        raise CapacityError(f"corpus enumeration is limited to k <= {MAX_CORPUS_K}")
    system = eigencount_solve(r)
    jobs = [(r, d, first) for d in range(1, max_k + 1) for first in range(1, 1 << d)
            if (1 << d) - first >= r]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_corpus_chunk, jobs))
    else:
        results = [_corpus_chunk(j) for j in jobs]
    corpus_size = sum(seen for seen, _ in results)
    qualifying, violations = [], []
    for _, hits in results:
        for c, s, eigs in hits:
            n = 1 << c.d
            counts = {}
            for e in eigs[1:]:
                counts[e] = counts.get(e, 0) + 1
            fits = system.satisfied_by(n, counts)
            entry = {"k": c.d, "n": n, "set": c.bitstrings(), "partner_xor": format(s, f"0{c.d}b"),
                     "eigencounts": {str(e): counts[e] for e in sorted(counts)},
                     "fits_eigencount_system": fits}
            qualifying.append(entry)
            if n > 1 << r or not fits:
                violations.append(entry)
    return {
        "r": r,
        "max_k": max_k,
        "scope": f"connected {r}-regular cubelike graphs on Z_2^k, 1 <= k <= {max_k}",
        "corpus_size": corpus_size,
        "bound": 1 << r,
        "qualifying": qualifying,
        "max_n": max((q["n"] for q in qualifying), default=None),
        "violations": violations,
    }


def dumps_report(report):
    return json.dumps(report, indent=2)
