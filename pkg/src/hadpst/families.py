"""Constructions that produce new Hadamard-diagonalizable graphs with PST."""

from fractions import Fraction
from importlib import resources

import numpy as np

from . import cubelike
from . import graphs as _graphs
from . import hadamard as _hadamard
from . import pst as _pst
from . import spectral
from .errors import DomainError, HypothesisError, InvariantError
from .pst import PstReport
from .spectral import HALF_PI

_ORDER12_LAPLACIAN = "order12_laplacian_x3.txt"
_ORDER12_LAPLACIAN_SHA256 = "b8526bbb4433a90f09e8fa6a4a02fb4d1f87062958359f9107f8c5237d855d44"


def _require_pst_input(cert):
    problems = []
    if cert.n < 4:
        problems.append("needs at least 4 vertices")
    if not cert.graph.is_unweighted():
        problems.append("defined for unweighted graphs")
    if problems:
        raise HypothesisError("; ".join(problems), problems)
    rep = _pst.pst_pairs(cert)
    if rep.verdict != "PST":
        raise HypothesisError("input graph has no PST at pi/2", ["no PST at pi/2"])
    return rep


def pst_complement(cert):
    """Complement of a PST graph, certified under the same Hadamard matrix.

    Every non-zero column keeps its eigenvector and its eigenvalue becomes
    ``n - lambda``; since ``4 | n`` the mod-4 residues, and hence the PST
    pairs, are unchanged.
    """
    rep = _require_pst_input(cert)
    gc = _graphs.complement(cert.graph)
    cc = spectral.certify(gc, cert.hadamard)
    n = cert.n
    for lam, lam_c in zip(cert.eigenvalues[1:], cc.eigenvalues[1:]):
        if lam_c != n - lam:
            raise InvariantError("complement eigenvalue is not n - lambda")
    rep_c = _pst.pst_pairs(cc)
    if rep_c.pairs != rep.pairs:
        raise InvariantError("complement changed the PST pairs")
    return gc, rep_c


def pst_self_join(cert):
    """``G v G`` on 2n vertices, certified by ``[[H, H], [H, -H]]``."""
    rep = _require_pst_input(cert)
    g2 = _graphs.join(cert.graph, cert.graph)
    c2 = spectral.certify(g2, cert.hadamard.double())
    rep2 = _pst.pst_pairs(c2)
    if not set(rep.pairs) <= set(rep2.pairs):
        raise InvariantError("join lost a PST pair of the factor")
    return g2, rep2


def weighted_hypercube(weights):
    """Cartesian product of ``w_i K2``; vertex bit ``n - i`` is coordinate i.

    The PST partner of u flips exactly the coordinates whose weight is odd.
    With no odd weight every vertex is periodic at pi/2.
    """
    ws = [Fraction(w) for w in weights]
    if not ws:
        raise DomainError("at least one weight is required")
    if any(w == 0 or w.denominator != 1 for w in ws):
        raise DomainError("weights must be nonzero integers")
    g = _graphs.from_edges(2, [(0, 1, ws[0])])
    for w in ws[1:]:
        g = _graphs.cartesian_product(g, _graphs.from_edges(2, [(0, 1, w)]))
    m = len(ws)
    mask = sum(1 << (m - 1 - i) for i, w in enumerate(ws) if w.numerator % 2)
    if mask:
        pairs = [(u + 1, (u ^ mask) + 1) for u in range(1 << m) if u < u ^ mask]
        rep = PstReport("PST", pairs, HALF_PI, "hypercube-parity")
    else:
        rep = PstReport("PERIODIC", (), HALF_PI, "hypercube-parity")
    exact = _pst.pst_pairs(spectral.certify(g, _hadamard.sylvester(m)), check=False)
    if (exact.verdict, exact.pairs) != (rep.verdict, rep.pairs):
        raise InvariantError("odd-coordinate rule disagrees with the mod-4 sweep")
    return g, rep


# -- d-regular family ----------------------------------------------------------

def _k22():
    return cubelike.build(cubelike.ConnectionSet(2, {1, 2}))


def _k2():
    return _graphs.complete(2)


def _base_k3(deg):
    if deg == 4:
        return _graphs.complement(_graphs.cartesian_product(_k22(), _k2())), "base (K22 x K2)^c"
    if deg == 5:
        return _graphs.complement(_graphs.disjoint_union(_k22(), _k22())), "base (K22 + K22)^c"
    return _graphs.complement(_graphs.perfect_matching(8)), "base (4 K2)^c"


def _clique_blocks(k, r):
    """Disjoint union of ``2**(k-r)`` copies of ``K_{2**r}`` on consecutive labels."""
    size = 1 << r
    edges = [(b + i, b + j) for b in range(0, 1 << k, size)
             for i in range(size) for j in range(i + 1, size)]
    return _graphs.from_edges(1 << k, edges)


def family_cases(k, deg):
    """Applicable constructions for degree deg on 2**k vertices, in priority order."""
    if k == 3:
        return [("base", None)] if 4 <= deg <= 6 else []
    m = k - 1
    out = []
    if deg == (1 << k) - 2:
        out.append(("matching", None))
    if m + 2 <= deg <= (1 << m) - 1:
        out.append(("1", None))
    for r in range(2, m + 1):
        dp = deg - (1 << r) + 1
        if m + 1 <= dp <= (1 << m) - 2:
            out.append(("2", r))
    if (1 << m) + 1 <= deg <= (1 << k) - 2:
        out.append(("join", None))
    return out


def _lower_graph(m, d):
    """A d-regular PST graph on 2**m vertices for any 1 <= d <= 2**m - 2."""
    if m + 1 <= d:
        return _family_graph(m, d)[0]
    return _graphs.complement(_family_graph(m, (1 << m) - 1 - d)[0])


def _family_graph(k, deg, case=None):
    if k < 3:
        raise DomainError("k must be at least 3")
    if not k + 1 <= deg <= (1 << k) - 2:
        raise DomainError(f"degree must lie in [{k + 1}, {(1 << k) - 2}]")
    options = family_cases(k, deg)
    if case is not None:
        options = [o for o in options if o[0] == str(case)]
        if not options:
            raise DomainError(f"case {case} does not apply to (k, deg) = ({k}, {deg})")
    kind, r = options[0]
    m = k - 1
    if kind == "base":
        return _base_k3(deg)
    if kind == "matching":
        return _graphs.complement(_graphs.perfect_matching(1 << k)), "perfect matching complement"
    if kind == "1":
        lower = _family_graph(m, deg - 1)[0]
        return _graphs.cartesian_product(_k2(), lower), "case 1: K2 x G"
    if kind == "2":
        dp = deg - (1 << r) + 1
        lower = _family_graph(m, dp)[0]
        return _graphs.merge(_clique_blocks(m, r), lower), f"case 2: r={r}, d'={dp}"
    lower = _lower_graph(m, deg - (1 << m))
    return _graphs.join(lower, lower), f"join: G v G with deg(G)={deg - (1 << m)}"


def regular_family(k, deg, case=None):
    """Connected non-bipartite deg-regular graph on 2**k vertices with PST at pi/2.

    Among the applicable constructions the first in the order
    matching-complement, case 1, case 2 (smallest r), join is used unless
    ``case`` picks one explicitly (``"1"``, ``"2"``, ``"join"``, ...).
    Returns ``(graph, report)``; the report's rule records the construction.
    """
    g, how = _family_graph(k, deg, case)
    rep = _pst.pst_pairs(spectral.certify(g, _hadamard.sylvester(k)))
    return g, PstReport(rep.verdict, rep.pairs, rep.time, f"{rep.rule}; {how}", rep.fidelity)


def family_properties(g, deg):
    """Independent checks of the claimed properties of a family member."""
    k = g.n.bit_length() - 1
    regular, d = _graphs.degree_profile(g)
    h = _hadamard.sylvester(k)
    diag = spectral.diagonalizes(g, h)
    pst_pairs = spectral.numeric_pst_pairs(g, float(HALF_PI))
    return {
        "connected": _graphs.is_connected(g),
        "non_bipartite": not _graphs.is_bipartite(g),
        "regular": bool(regular and d == deg),
        "standard_hadamard": bool(diag),
        "pst": bool(pst_pairs),
        "unweighted": g.is_unweighted(),
    }


def degree_coverage(k, with_extras=True):
    """Degrees reached on 2**(k+1) vertices from graphs on 2**k vertices.

    The interval union ``[k+2, 2**k - 1]`` plus ``[k + 2**r, 2**k + 2**r - 3]``
    for ``2 <= r <= k``; ``with_extras`` adds the perfect-matching complement
    degree ``2**(k+1) - 2`` and the join degrees ``[2**k + 1, 2**(k+1) - 2]``.
    """
    out = set(range(k + 2, (1 << k)))
    for r in range(2, k + 1):
        out |= set(range(k + (1 << r), (1 << k) + (1 << r) - 2))
    if with_extras:
        out.add((1 << (k + 1)) - 2)
        out |= set(range((1 << k) + 1, (1 << (k + 1)) - 1))
    return out


# -- order-12 Hadamard merge ---------------------------------------------------

def order12_laplacian():
    """The rational-weight order-12 Laplacian diagonalized by the catalog matrix."""
    import hashlib
    raw = resources.files("hadpst.data").joinpath(_ORDER12_LAPLACIAN).read_bytes()
    if hashlib.sha256(raw).hexdigest() != _ORDER12_LAPLACIAN_SHA256:
        raise InvariantError("order-12 Laplacian data file failed its checksum")
    rows = [[int(v) for v in ln.split()] for ln in raw.decode().splitlines()
            if ln.strip() and not ln.startswith("#")]
    lap = np.array([[Fraction(v, 3) for v in row] for row in rows], dtype=object)
    return _graphs.from_laplacian(lap)


def order12_pst_merge():
    """Merge of the order-12 graph with K12 at weights (5, 2), certified by order 24.

    Returns ``(graph, report, certificate)``.
    """
    g1 = order12_laplacian()
    g2 = _graphs.complete(12)
    h12 = _hadamard.catalog(12)
    rep = _pst.merge_pst(spectral.certify(g1, h12), spectral.certify(g2, h12), 5, 2)
    g = _graphs.merge(g1, g2, 5, 2)
    cert = spectral.certify(g, _hadamard.catalog(24))
    return g, rep, cert
