"""Pretty good state transfer for merges with one quadratic-irrational weight.

Approximants ``u/v`` with ``|w - u/v| < 1/v**2`` in a prescribed parity
class are read off the exact (periodic) continued fraction of ``w``, using
integer arithmetic only. Each approximant yields a nearby integer-weighted
merge with PST at ``v*pi/2``, which the true irrational-weight graph tracks
closely.
"""

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from . import _exact
from . import graphs as _graphs
from . import spectral
from .errors import DomainError, HorizonError, UnsupportedError
from .pst import merge_pst
from .spectral import PiTime


def _squarefree_split(d):
    """Return ``(s, r)`` with ``d = s*s*r`` and ``r`` squarefree."""
    s, r, p = 1, d, 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1
    return s, r


def _sign(a, b, d):
    """Sign of ``a + b*sqrt(d)`` for integers, exactly."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    diff = a * a - b * b * d
    if a > 0:
        return (diff > 0) - (diff < 0)
    return (diff < 0) - (diff > 0)


@dataclass(frozen=True)
class QuadraticIrrational:
    """The number ``(a + b*sqrt(d)) / c`` with ``c > 0`` and ``d`` squarefree."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        a, b, c, d = int(self.a), int(self.b), int(self.c), int(self.d)
        if c == 0:
            raise DomainError("denominator must be nonzero")
        if d < 1:
            raise DomainError("radicand must be a positive integer")
        if c < 0:
            a, b, c = -a, -b, -c
        s, d = _squarefree_split(d)
        b *= s
        if d == 1:
            a, b = a + b, 0
        if b == 0:
            d = 1
        g = gcd(gcd(a, b), c)
        a, b, c = a // g, b // g, c // g
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, v)

    @classmethod
    def sqrt(cls, d):
        return cls(0, 1, 1, d)

    @property
    def is_rational(self):
        return self.b == 0

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __str__(self):
        if self.is_rational:
            return _exact.fraction_str(Fraction(self.a, self.c))
        rad = f"sqrt({self.d})" if self.b == 1 else f"{self.b}*sqrt({self.d})"
        body = rad if self.a == 0 else f"{self.a}{'+' if self.b > 0 else ''}{rad}"
        return body if self.c == 1 else f"({body})/{self.c}"

    def scaled(self, r):
        r = _exact.as_fraction(r)
        return QuadraticIrrational(self.a * r.numerator, self.b * r.numerator,
                                   self.c * r.denominator, self.d)

    def approx(self, digits=40):
        """Rational within ``10**-digits`` of the value."""
        scale = 10 ** digits
        root = isqrt(self.b * self.b * self.d * scale * scale)
        if self.b < 0:
            root = -root
        return Fraction(self.a * scale + root, self.c * scale)

    def compare(self, x):
        """Sign of ``self - x`` for a rational ``x``, exactly."""
        x = _exact.as_fraction(x)
        # (a + b sqrt d)/c - p/q  ~  (a q - c p) + b q sqrt d
        return _sign(self.a * x.denominator - self.c * x.numerator,
                     self.b * x.denominator, self.d)

    def continued_fraction(self):
        """Yield the partial quotients of the value (infinite if irrational)."""
        if self.is_rational:
            num, den = self.a, self.c
            while den:
                q = num // den
                yield q
                num, den = den, num - q * den
            return
        if self.b > 0:
            p, q = self.a, self.c
        else:
            p, q = -self.a, -self.c
        dd = self.b * self.b * self.d
        if (dd - p * p) % q:
            p, dd, q = p * abs(q), dd * q * q, q * abs(q)
        root = isqrt(dd)
        while True:
            if q > 0:
                term = (p + root) // q
            else:
                term = -((p + root) // (-q) + 1)
            yield term
            p = term * q - p
            q = (dd - p * p) // q

    def beats_dirichlet(self, u, v):
        """Exact test of ``|w - u/v| < 1/v**2``."""
        if v <= 0:
            return False
        x, y = self.a * v - self.c * u, self.b * v
        s = _sign(x, y, self.d)
        return _sign(self.c - v * s * x, -v * s * y, self.d) > 0


_TERM = re.compile(r"[+-]?[^+-]+")


def parse_quadratic(text):
    """Parse ``sqrt(2)``, ``3*sqrt(5)``, ``(1+sqrt(5))/2``, ``1-2*sqrt(3)``,
    a plain rational ``p/q``, or a comma tuple ``a,b,c,d``."""
    s = text.replace(" ", "")
    if "," in s:
        parts = [int(v) for v in s.split(",")]
        if len(parts) != 4:
            raise DomainError("tuple form needs exactly a,b,c,d")
        return QuadraticIrrational(*parts)
    if "sqrt" not in s:
        f = Fraction(s)
        return QuadraticIrrational(f.numerator, 0, f.denominator, 1)
    den = 1
    m = re.fullmatch(r"\((.*)\)/(\d+)", s)
    if m:
        s, den = m.group(1), int(m.group(2))
    elif s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    a, b, d = 0, 0, None
    for term in _TERM.findall(s.replace("sqrt(", "sqrt[").replace(")", "]")):
        if "sqrt" in term:
            coef, _, rest = term.partition("sqrt[")
            coef = coef.rstrip("*")
            b += {"": 1, "+": 1, "-": -1}.get(coef, None) or int(coef)
            rd = int(rest.rstrip("]"))
            if d is not None and rd != d:
                raise DomainError("only one radicand is supported")
            d = rd
        else:
            a += int(term)
    return QuadraticIrrational(a, b, den, d)


class ParityClass(enum.Enum):
    """Parities ``[u, v]`` of an approximant ``u/v`` (o = odd, e = even)."""

    OE = "oe"
    EO = "eo"
    OO = "oo"

    def matches(self, u, v):
        return (u % 2, v % 2) == {"oe": (1, 0), "eo": (0, 1), "oo": (1, 1)}[self.value]

    @classmethod
    def parse(cls, text):
        key = text.strip().strip("[]").replace(",", "").lower()
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown parity class {text!r}") from None


def _candidates(w):
    """Convergents and semiconvergents in nondecreasing denominator order."""
    p2, q2, p1, q1 = 0, 1, 1, 0
    for level, term in enumerate(w.continued_fraction()):
        for m in range(1, term):
            yield level, p2 + m * p1, q2 + m * q1
        p, q = term * p1 + p2, term * q1 + q2
        yield level, p, q
        p2, q2, p1, q1 = p1, q1, p, q


def pgst_approximants(w, cls, count, horizon=5000):
    """First ``count`` coprime ``(u, v)`` in class ``cls`` with ``|w-u/v| < 1/v**2``.

    Denominators are strictly increasing. ``horizon`` caps the number of
    continued-fraction levels scanned.
    """
    if w.is_rational:
        raise DomainError("approximants are only defined for irrational weights")
    cls = cls if isinstance(cls, ParityClass) else ParityClass.parse(cls)
    found, last_v = [], 0
    for level, u, v in _candidates(w):
        if level > horizon:
            raise HorizonError(f"scanned {horizon} continued-fraction levels", found)
        if v > last_v and cls.matches(u, v) and w.beats_dirichlet(u, v):
            found.append((u, v))
            last_v = v
            if len(found) == count:
                return found
    return found


def fidelity_perturbation_bound(x):
    """Upper bound ``2x + x**2 - x**3`` on the fidelity loss for ``x = ||t L0||``."""
    if x < 0:
        raise DomainError("norm must be non-negative")
    return 2 * x + x * x - x ** 3


# maximum of 2x + x^2 - x^3 on x >= 0; beyond it the cubic decreases
_BOUND_PEAK = (1 + math.sqrt(7)) / 3


def monotone_loss_bound(x):
    """Non-decreasing envelope of :func:`fidelity_perturbation_bound`.

    The cubic only controls small perturbations; past its peak it would
    shrink (and eventually go negative) as x grows. Capping x at the peak
    keeps the bound at or above 1 there, i.e. uninformative but true.
    """
    return fidelity_perturbation_bound(min(x, _BOUND_PEAK))


@dataclass(frozen=True)
class PgstPoint:
    u: int
    v: int
    time: PiTime
    fidelity: float
    lower_bound: float

    @property
    def informative(self):
        return self.lower_bound > 0


def _as_weight(w):
    if isinstance(w, QuadraticIrrational):
        return (Fraction(w.a, w.c), None) if w.is_rational else (None, w)
    return _exact.as_fraction(w), None


def _inf_norm(mat):
    return max((sum(abs(v) for v in row) for row in mat), default=Fraction(0))


def _choose_class(cert1, cert2, irrational_second, pair):
    """Find the parity class whose nearby integer merge has PST on ``pair``."""
    for cls in (ParityClass.EO, ParityClass.OE, ParityClass.OO):
        u_odd = cls.value[0] == "o"
        v_odd = cls.value[1] == "o"
        if irrational_second:
            w1, w2 = (1 if v_odd else 2), (1 if u_odd else 2)
        else:
            w1, w2 = (1 if u_odd else 2), (1 if v_odd else 2)
        rep = merge_pst(cert1, cert2, w1, w2, check=False)
        if rep.verdict == "PST" and tuple(pair) in rep.pairs:
            return cls, rep.rule
    return None, None


def pgst_sequence(cert1, cert2, w1, w2, p, q, count, horizon=5000):
    """Fidelities of the irrational-weight merge along its approximant times.

    Exactly one of ``w1``, ``w2`` must be an irrational
    :class:`QuadraticIrrational`; the other is rational and nonzero. Returns
    one :class:`PgstPoint` per approximant ``u/v``; ``lower_bound`` is the
    perturbation guarantee ``1 - 2x - x**2 + x**3`` (negative values mean the
    guarantee is uninformative at that ``v``).
    """
    if cert1.hadamard != cert2.hadamard:
        raise DomainError("certificates were not produced by a common Hadamard matrix")
    r1, i1 = _as_weight(w1)
    r2, i2 = _as_weight(w2)
    if i1 is None and i2 is None:
        raise DomainError("both weights are rational; use merge_pst")
    if i1 is not None and i2 is not None:
        raise UnsupportedError("both weights irrational is not supported")
    irrational_second = i2 is not None
    rat, irr = (r1, i2) if irrational_second else (r2, i1)
    if rat == 0:
        raise DomainError("the rational weight must be nonzero")
    n = cert1.n
    if not (1 <= p < q <= 2 * n):
        raise DomainError("pair must satisfy 1 <= p < q <= 2n")

    # rescale so the rational weight becomes an odd integer
    r = 0
    num = rat.numerator
    while num % 2 == 0:
        num //= 2
        r += 1
    s = Fraction(rat.denominator, 2 ** r)
    target = irr.scaled(s)

    cls, rule = _choose_class(cert1, cert2, irrational_second, (p, q))
    if cls is None:
        raise DomainError(f"pair {(p, q)} is not covered by any parity class")

    g1, g2 = cert1.graph, cert2.graph
    lap_a = _graphs.merge(g1, g2, 1, 0).laplacian()
    lap_b = _graphs.merge(g1, g2, 0, 1).laplacian()
    lap3 = float(w1) * _exact.to_float(lap_a) + float(w2) * _exact.to_float(lap_b)
    values, vectors = spectral._eigh_checked(lap3)
    pert_norm = float(_inf_norm(lap_b if irrational_second else lap_a))
    w_hi = target.approx(60)

    out = []
    for u, v in pgst_approximants(target, cls, count, horizon):
        time = PiTime(s * v / 2)
        phases = np.exp(1j * float(time) * values)
        amp = (vectors[p - 1] * phases) @ vectors[q - 1]
        fid = float(abs(amp) ** 2)
        gap = abs(w_hi - Fraction(u, v)) + Fraction(1, 10 ** 55)
        x = float(v) * math.pi / 2 * float(gap) * pert_norm
        lower = 1.0 - monotone_loss_bound(x)
        out.append(PgstPoint(u, v, time, fid, lower))
    return out


def pgst_rule(cert1, cert2, w1, w2, p, q):
    """Which merge-table case drives PGST on ``(p, q)`` (or None)."""
    irrational_second = isinstance(w2, QuadraticIrrational) and not w2.is_rational
    return _choose_class(cert1, cert2, irrational_second, (p, q))
