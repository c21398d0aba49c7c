"""Exact perfect-state-transfer decisions for Hadamard-diagonalizable graphs.

All decisions are made on exact eigenvalues; the floating-point oracle in
``spectral`` is only used to cross-check what the exact route reports.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import _exact
from . import graphs as _graphs
from . import spectral
from .errors import (CertificationError, DomainError, HypothesisError,
                     OracleMismatchError)
from .spectral import HALF_PI, PST_TOL, PiTime

VERDICTS = ("PST", "PERIODIC", "NONE", "PGST")


@dataclass(frozen=True)
class PstReport:
    """Outcome of a state-transfer check.

    ``pairs`` are 1-based ``(j, k)`` with ``j < k``; ``time`` is the time the
    verdict refers to; ``rule`` names the criterion that decided it.
    ``fidelity`` is the smallest oracle fidelity over the reported pairs (or
    over all vertices for PERIODIC), when the oracle ran.
    """

    verdict: str
    pairs: tuple = ()
    time: PiTime = HALF_PI
    rule: str = ""
    fidelity: float = None
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise DomainError(f"unknown verdict {self.verdict!r}")
        object.__setattr__(self, "pairs", tuple(sorted(tuple(p) for p in self.pairs)))
        if self.verdict == "PST" and not self.pairs:
            raise DomainError("a PST verdict needs at least one pair")

    def to_json_obj(self):
        return {"verdict": self.verdict, "pairs": [list(p) for p in self.pairs],
                "time": str(self.time), "rule": self.rule, "fidelity": self.fidelity}

    def dumps(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        try:
            return cls(obj["verdict"], tuple(tuple(p) for p in obj["pairs"]),
                       PiTime.parse(obj["time"]), obj.get("rule", ""), obj.get("fidelity"))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed report JSON: {exc}") from None

    @classmethod
    def loads(cls, text):
        return cls.from_json_obj(json.loads(text))


def _integer_spectrum(cert):
    if not cert.has_integer_spectrum():
        raise DomainError("eigenvalues are not all integers; rescale the graph first")
    return np.array([int(v) for v in cert.eigenvalues], dtype=np.int64)


def pst_mod4(cert, j, k):
    """PST from j to k (1-based) at time pi/2 via the mod-4 eigenvalue test.

    True iff ``lambda_l == 1 - h_jl * h_kl (mod 4)`` for every column l.
    With ``j == k`` this tests whether vertex j returns to itself at pi/2.
    """
    lam = _integer_spectrum(cert)
    n = cert.n
    if not (1 <= j <= n and 1 <= k <= n):
        raise DomainError("vertex out of range")
    h = cert.hadamard.entries
    target = (1 - h[j - 1] * h[k - 1]) % 4
    return bool(np.array_equal(lam % 4, target))


def _mod4_partner_table(cert):
    """Map each 0-based vertex to its mod-4 partner (or None)."""
    lam = _integer_spectrum(cert)
    h = cert.hadamard.entries
    if np.any(lam % 2):
        return [None] * cert.n
    signs = np.where(lam % 4 == 0, 1, -1)
    rows = {tuple(row): i for i, row in enumerate(h)}
    return [rows.get(tuple(h[j] * signs)) for j in range(cert.n)]


def _oracle_check(g, pairs, time, periodic=False):
    probs = spectral.Propagator(g).probabilities(time)
    if periodic:
        fids = [probs[j, j] for j in range(g.n)]
    else:
        fids = [probs[j - 1, k - 1] for j, k in pairs]
    worst = float(min(fids))
    if 1.0 - worst > PST_TOL:
        raise OracleMismatchError(
            f"exact criterion reports transfer at {time} but the oracle fidelity is {worst:.3e}")
    return worst


def pst_pairs(cert, check=True):
    """Sweep every pair j < k with the mod-4 test at time pi/2."""
    lam = _integer_spectrum(cert)
    partner = _mod4_partner_table(cert)
    pairs = [(j + 1, k + 1) for j, k in enumerate(partner) if k is not None and j < k]
    if pairs:
        fid = _oracle_check(cert.graph, pairs, HALF_PI) if check else None
        return PstReport("PST", pairs, HALF_PI, "mod4", fid)
    if not cert.graph.is_empty() and not np.any(lam % 4):
        fid = _oracle_check(cert.graph, (), HALF_PI, periodic=True) if check else None
        return PstReport("PERIODIC", (), HALF_PI, "mod4-periodic", fid)
    return PstReport("NONE", (), HALF_PI, "mod4")


def gcd_rescale(g):
    """Divide an integer-weighted graph by the gcd ``a`` of its weights.

    ``g`` has PST at ``pi / (2a)`` iff the returned graph has PST at pi/2.
    """
    if not g.is_integer_weighted():
        raise DomainError("gcd rescaling needs integer weights")
    a = 0
    for _, _, w in g.edges():
        a = gcd(a, w.numerator)
    if a == 0:
        raise DomainError("the empty graph cannot be rescaled")
    return _graphs.scale(g, Fraction(1, a)), a


def rational_rescale(g):
    """Scale a rational-weighted graph to integer weights with gcd 1.

    Returns ``(g2, t1)`` where ``g2`` has Laplacian ``(lcm/gcd) L`` and
    ``t1 = (lcm/gcd) pi/2``: ``g`` has PST at ``t1`` iff ``g2`` has PST at
    pi/2 between the same vertices.
    """
    edges = g.edges()
    if not edges:
        raise DomainError("the empty graph cannot be rescaled")
    den = 1
    for _, _, w in edges:
        den = lcm(den, w.denominator)
    g_int = 0
    for _, _, w in edges:
        g_int = gcd(g_int, (w * den).numerator)
    factor = Fraction(den, g_int)
    return _graphs.scale(g, factor), HALF_PI.scaled(factor)


def pst_report(g, h, check=True):
    """Certify ``g`` with ``h`` and sweep pairs, rescaling rational weights."""
    if g.is_empty():
        return PstReport("NONE", (), HALF_PI, "mod4")
    g2, t1 = rational_rescale(g)
    rep = pst_pairs(spectral.certify(g2, h), check=check)
    if t1 == HALF_PI:
        return rep
    return PstReport(rep.verdict, rep.pairs, t1, rep.rule + "+rescaled", rep.fidelity)


# -- merge ---------------------------------------------------------------------

def _two_adic(w):
    r = 0
    while w % 2 == 0:
        w //= 2
        r += 1
    return r


def merge_hypotheses(g1, g2, h):
    """List the merge-table hypotheses that ``(g1, g2, h)`` violates."""
    problems = []
    if g1.n != g2.n:
        return ["graphs have different orders"]
    if h.order != g1.n:
        return ["Hadamard order differs from the graph order"]
    for name, g in (("G1", g1), ("G2", g2)):
        if not spectral.diagonalizes(g, h):
            problems.append(f"{name} is not diagonalized by the common Hadamard matrix")
    if not problems:
        for name, g in (("G1", g1), ("G2", g2)):
            cert = spectral.certify(g, h)
            if any(v.denominator != 1 or v.numerator % 2 for v in cert.eigenvalues):
                problems.append(f"{name} has a non-even or non-integer eigenvalue")
    return problems


def merged_spectrum(cert1, cert2, w1, w2):
    """Exact merged eigenvalues in the column order of ``[[H, H], [H, -H]]``."""
    d2 = cert2.degree
    top = [w1 * a + w2 * b for a, b in zip(cert1.eigenvalues, cert2.eigenvalues)]
    bottom = [w1 * a - w2 * b + 2 * w2 * d2 for a, b in zip(cert1.eigenvalues, cert2.eigenvalues)]
    return tuple(Fraction(v) for v in top + bottom)


def merge_pst(cert1, cert2, w1, w2, check=True):
    """Decide PST of the weighted merge from the two input certificates.

    Implements the eight-case parity table over ``(w1, w2, d2)``. When both
    weights are even, the common power ``2**r`` is factored out and the
    verdict refers to time ``pi / 2**(r+1)``.
    """
    if cert1.hadamard != cert2.hadamard:
        raise DomainError("certificates were not produced by a common Hadamard matrix")
    w1 = _exact.as_fraction(w1)
    w2 = _exact.as_fraction(w2)
    if w1.denominator != 1 or w2.denominator != 1:
        raise DomainError("merge weights must be integers")
    w1, w2 = w1.numerator, w2.numerator
    for cert in (cert1, cert2):
        if any(v.denominator != 1 or v.numerator % 2 for v in cert.eigenvalues):
            raise DomainError("both graphs need even integer spectra")
    d2 = cert2.degree
    if d2.denominator != 1:
        raise DomainError("degree of G2 is not an integer")
    n = cert1.n
    g1, g2 = cert1.graph, cert2.graph
    merged = _graphs.merge(g1, g2, w1, w2)
    if w1 == 0 and w2 == 0:
        return PstReport("NONE", (), HALF_PI, "merge-empty")

    r = min(_two_adic(w) for w in (w1, w2) if w != 0)
    a, b = w1 >> r if w1 else 0, w2 >> r if w2 else 0
    time = PiTime(Fraction(1, 2 ** (r + 1)))
    odd1, odd2, odd_d = a % 2 == 1, b % 2 == 1, d2.numerator % 2 == 1

    sum_cert = None
    if odd1 and odd2:
        sum_cert = spectral.certify(_graphs.add(g1, g2), cert1.hadamard)

    within, within_rule = None, None
    if odd1 and not odd2:
        within, within_rule = cert1, "a"
    elif not odd1 and odd2 and not odd_d:
        within, within_rule = cert2, "b"
    elif odd1 and odd2 and not odd_d:
        within, within_rule = sum_cert, "c"

    cross, cross_rule = None, None
    if not odd1 and odd2 and odd_d:
        cross, cross_rule = cert2, "a"
    elif odd1 and odd2 and odd_d:
        cross, cross_rule = sum_cert, "b"

    pairs, rules = [], []
    if within is not None:
        partner = _mod4_partner_table(within)
        base = [(j, k) for j, k in enumerate(partner) if k is not None and j < k]
        if base:
            pairs += [(j + 1, k + 1) for j, k in base]
            pairs += [(j + n + 1, k + n + 1) for j, k in base]
            rules += [f"merge-1{within_rule}", f"merge-2{within_rule}"]
    if cross is not None:
        partner = _mod4_partner_table(cross)
        found = [(j + 1, k + n + 1) for j, k in enumerate(partner) if k is not None]
        if found:
            pairs += found
            rules.append(f"merge-3{cross_rule}")

    scale_note = f"weights reduced by 2**{r}" if r else ""
    if pairs:
        fid = _oracle_check(merged, pairs, time) if check else None
        return PstReport("PST", pairs, time, "+".join(rules), fid,
                         notes=(scale_note,) if scale_note else ())
    spec = merged_spectrum(cert1, cert2, a, b)
    if not merged.is_empty() and all(v.denominator == 1 and v.numerator % 4 == 0 for v in spec):
        fid = _oracle_check(merged, (), time, periodic=True) if check else None
        return PstReport("PERIODIC", (), time, "merge-periodic", fid)
    return PstReport("NONE", (), time, "merge-table")


def merge_pst_graphs(g1, g2, w1, w2, h, check=True):
    """Certify both graphs under ``h`` and run :func:`merge_pst`.

    Raises ``HypothesisError`` listing every violated hypothesis when the
    graphs do not share the Hadamard matrix or lack even spectra.
    """
    problems = merge_hypotheses(g1, g2, h)
    if problems:
        raise HypothesisError("; ".join(problems), problems)
    try:
        c1, c2 = spectral.certify(g1, h), spectral.certify(g2, h)
    except CertificationError as exc:
        raise HypothesisError(str(exc), [str(exc)]) from exc
    return merge_pst(c1, c2, w1, w2, check=check)
