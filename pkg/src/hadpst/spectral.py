"""Hadamard diagonalization certificates and the numerical evolution oracle."""

import csv
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _exact
from . import graphs as _graphs
from .errors import (AlignmentError, CertificationError, DomainError, InvariantError,
                     NumericError)
from .hadamard import HadamardMatrix

PST_TOL = 1e-9
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True, order=True)
class PiTime:
    """A time given exactly as a rational multiple of pi."""

    coef: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coef", _exact.as_fraction(self.coef))

    def __float__(self):
        return float(self.coef) * math.pi

    def __str__(self):
        return f"{_exact.fraction_str(self.coef)} * pi"

    def scaled(self, factor):
        return PiTime(self.coef * _exact.as_fraction(factor))

    _PATTERN = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")

    @classmethod
    def parse(cls, text):
        """Accept ``1/2pi``, ``1/2 * pi``, ``pi``, ``pi/4``, ``3pi/2``."""
        m = cls._PATTERN.match(text.replace(" ", ""))
        if not m:
            raise DomainError(f"cannot parse {text!r} as a multiple of pi")
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(2):
            coef /= int(m.group(2))
        return cls(coef)


HALF_PI = PiTime(Fraction(1, 2))


@dataclass(frozen=True, eq=False)
class SpectralCertificate:
    """Exact eigen-decomposition ``L = (1/n) H diag(eigenvalues) H^T``.

    ``hadamard`` has been column-signed so its first row is all ones, and its
    first column is the all-ones eigenvector for eigenvalue 0. Column j of
    ``hadamard`` is an eigenvector for ``eigenvalues[j]``.
    """

    graph: _graphs.WeightedGraph
    hadamard: HadamardMatrix
    eigenvalues: tuple

    @property
    def n(self):
        return self.graph.n

    @property
    def degree(self):
        """Weighted degree; well defined because certified graphs are regular."""
        return sum(self.eigenvalues, Fraction(0)) / self.n

    def has_integer_spectrum(self):
        return all(v.denominator == 1 for v in self.eigenvalues)

    def __repr__(self):
        vals = ", ".join(_exact.fraction_str(v) for v in self.eigenvalues)
        return f"SpectralCertificate(n={self.n}, eigenvalues=({vals}))"


def diagonalizes(lap, h):
    """True iff ``H^T L H`` is diagonal, checked in exact integer arithmetic."""
    if isinstance(lap, _graphs.WeightedGraph):
        lap = lap.laplacian()
    lap = _exact.fraction_matrix(lap)
    if lap.shape != h.entries.shape:
        raise DomainError("Laplacian and Hadamard orders differ")
    m, _ = _exact.scaled_integer(lap)
    d = h.entries.T @ m @ h.entries
    return not np.any(d - np.diag(np.diag(d)))


def _aligned_columns(h):
    e = h.entries * h.entries[0][None, :]
    ones = np.flatnonzero((e == 1).all(axis=0))
    if ones.size == 0:
        raise AlignmentError("no all-ones column after signing by the first row")
    first = int(ones[0])
    order = [first] + [j for j in range(e.shape[1]) if j != first]
    return e[:, order]


def certify(g, h):
    """Return the aligned spectral certificate of ``g`` under ``h``.

    Columns are signed so row 1 is all ones, the all-ones column is moved to
    the front, and each eigenvalue is the common value of the componentwise
    ratios ``(L h_j)_i / (h_j)_i``.
    """
    if g.n != h.order:
        raise DomainError("graph and Hadamard orders differ")
    lap = g.laplacian()
    m, den = _exact.scaled_integer(lap)
    e = h.entries
    d = e.T @ m @ e
    if np.any(d - np.diag(np.diag(d))):
        raise CertificationError("the Laplacian is not diagonalized by this Hadamard matrix")
    aligned = _aligned_columns(h)
    ratios = (m @ aligned) * aligned
    if np.any(ratios != ratios[0][None, :]):
        raise InvariantError("a diagonalizing column failed the eigenvector ratio test")
    eigenvalues = tuple(Fraction(int(v), den) for v in ratios[0])
    cert = SpectralCertificate(g, HadamardMatrix(aligned), eigenvalues)
    check_certificate(cert, _scaled=(m, den, ratios[0]))
    return cert


def check_certificate(cert, _scaled=None):
    """Verify reconstruction, the zero eigenvalue, and even-integer spectra.

    Integer-weighted Hadamard-diagonalizable graphs must be regular with
    even integer eigenvalues; a violation raises ``InvariantError``.
    """
    h = cert.hadamard.entries
    n = cert.n
    if _scaled is None:
        m, den = _exact.scaled_integer(cert.graph.laplacian())
        lam = np.array([int(v * den) for v in cert.eigenvalues], dtype=object)
        if m.dtype != object and max(abs(v) for v in lam) * n * n < 2**62:
            lam = lam.astype(np.int64)
    else:
        m, den, lam = _scaled
    if not np.array_equal((h * lam[None, :]) @ h.T, n * m):
        raise InvariantError("(1/n) H diag(eigenvalues) H^T does not reproduce L")
    if cert.eigenvalues[0] != 0 or not (h[:, 0] == 1).all():
        raise InvariantError("first certificate column must be the zero eigenvector")
    if cert.graph.is_integer_weighted():
        if any(v.denominator != 1 or v.numerator % 2 for v in cert.eigenvalues):
            raise InvariantError("integer-weighted certified graph has a non-even eigenvalue")
        if not _graphs.degree_profile(cert.graph)[0]:
            raise InvariantError("integer-weighted certified graph is not regular")
    return True


def graph_from_spectrum(h, eigenvalues):
    """Graph with Laplacian ``(1/n) H diag(eigenvalues) H^T``.

    ``h`` must have an all-ones first column whose eigenvalue is 0; the
    result may carry rational or negative weights.
    """
    lam = [_exact.as_fraction(v) for v in eigenvalues]
    e = h.entries
    if len(lam) != h.order:
        raise DomainError("one eigenvalue per Hadamard column is required")
    if not (e[:, 0] == 1).all() or lam[0] != 0:
        raise DomainError("first column must be all ones with eigenvalue 0")
    n = h.order
    lap = (e * np.array(lam, dtype=object)[None, :]) @ e.T
    lap = np.array([[Fraction(v) / n for v in row] for row in lap], dtype=object)
    return _graphs.from_laplacian(lap)


# -- numerical oracle ----------------------------------------------------------

class Propagator:
    """Spectral form of ``exp(i t L)`` reusable across many times.

    With a certificate the exact eigenpairs are used (and exact pi-multiples
    are reduced mod 2 before exponentiating); otherwise a dense symmetric
    eigensolver is run once and its residual checked.
    """

    def __init__(self, g, cert=None, hamiltonian="laplacian"):
        if hamiltonian not in ("laplacian", "adjacency"):
            raise DomainError("hamiltonian must be 'laplacian' or 'adjacency'")
        self.n = g.n
        if cert is not None and hamiltonian == "laplacian":
            self.vectors = cert.hadamard.entries.astype(float) / math.sqrt(self.n)
            self.exact_values = cert.eigenvalues
            self.values = np.array([float(v) for v in cert.eigenvalues])
            return
        mat = g.laplacian() if hamiltonian == "laplacian" else g.adjacency()
        self.exact_values = None
        self.values, self.vectors = _eigh_checked(_exact.to_float(mat))

    def phases(self, t):
        if isinstance(t, PiTime) and self.exact_values is not None:
            reduced = [(t.coef * v) % 2 for v in self.exact_values]
            return np.exp(1j * math.pi * np.array([float(r) for r in reduced]))
        return np.exp(1j * float(t) * self.values)

    def operator(self, t):
        return (self.vectors * self.phases(t)[None, :]) @ self.vectors.T

    def probabilities(self, t):
        return np.abs(self.operator(t)) ** 2


def _eigh_checked(mat):
    try:
        vals, vecs = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed: {exc}") from exc
    scale = max(np.linalg.norm(mat, 2), 1.0)
    if np.linalg.norm(mat @ vecs - vecs * vals[None, :], 2) > RESIDUAL_TOL * scale:
        raise NumericError("eigensolver residual above tolerance")
    return vals, vecs


def evolution_operator(g, t, cert=None, hamiltonian="laplacian"):
    return Propagator(g, cert, hamiltonian).operator(t)


def evolve_fidelity(g, t, j, k, cert=None, hamiltonian="laplacian"):
    """``|(exp(i t L))_{jk}|**2`` for 1-based vertices j and k."""
    if not (1 <= j <= g.n and 1 <= k <= g.n):
        raise DomainError("vertex out of range")
    u = Propagator(g, cert, hamiltonian).operator(t)
    return float(abs(u[j - 1, k - 1]) ** 2)


@dataclass(frozen=True)
class FidelityPoint:
    t: float
    p: float


def fidelity_curve(g, j, k, t_max, steps, cert=None, hamiltonian="laplacian"):
    if steps < 2:
        raise DomainError("at least two grid points are required")
    if not (1 <= j <= g.n and 1 <= k <= g.n):
        raise DomainError("vertex out of range")
    prop = Propagator(g, cert, hamiltonian)
    t_max = float(t_max)
    out = []
    for i in range(steps):
        t = t_max * i / (steps - 1)
        out.append(FidelityPoint(t, float(abs(prop.operator(t)[j - 1, k - 1]) ** 2)))
    return out


def write_fidelity_csv(points, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["t", "p"])
    for pt in points:
        w.writerow([f"{pt.t:.17g}", f"{pt.p:.17g}"])


def read_fidelity_csv(fh):
    rows = list(csv.reader(fh))
    if not rows or rows[0] != ["t", "p"]:
        raise DomainError("fidelity CSV must start with the header 't,p'")
    return [FidelityPoint(float(a), float(b)) for a, b in rows[1:]]


def numeric_pst_pairs(g, t, tol=PST_TOL, hamiltonian="laplacian"):
    """Oracle sweep: 1-based pairs ``j < k`` with ``1 - p(t) <= tol``.

    Uses the generic eigensolver, never a Hadamard certificate.
    """
    probs = Propagator(g, None, hamiltonian).probabilities(t)
    n = g.n
    return [(j + 1, k + 1) for j in range(n) for k in range(j + 1, n)
            if 1.0 - probs[j, k] <= tol]


def numeric_periodic(g, t, tol=PST_TOL):
    probs = Propagator(g).probabilities(t)
    return bool(all(1.0 - probs[j, j] <= tol for j in range(g.n)))


def numeric_verdict(g, t, tol=PST_TOL):
    """Oracle verdict ``(verdict, pairs)`` mirroring the exact reports."""
    probs = Propagator(g).probabilities(t)
    n = g.n
    pairs = [(j + 1, k + 1) for j in range(n) for k in range(j + 1, n)
             if 1.0 - probs[j, k] <= tol]
    if pairs:
        return "PST", pairs
    if not g.is_empty() and all(1.0 - probs[j, j] <= tol for j in range(n)):
        return "PERIODIC", []
    return "NONE", []


# -- certificate JSON ----------------------------------------------------------

def certificate_to_json_obj(cert):
    return {
        "n": cert.n,
        "graph": _graphs.to_json_obj(cert.graph),
        "hadamard": cert.hadamard.entries.tolist(),
        "eigenvalues": [_exact.fraction_str(v) for v in cert.eigenvalues],
        "degree": _exact.fraction_str(cert.degree),
    }


def certificate_from_json_obj(obj):
    try:
        g = _graphs.from_json_obj(obj["graph"])
        h = HadamardMatrix(np.array(obj["hadamard"], dtype=np.int64))
        lam = tuple(Fraction(v) for v in obj["eigenvalues"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed certificate JSON: {exc}") from None
    cert = SpectralCertificate(g, h, lam)
    check_certificate(cert)
    return cert
