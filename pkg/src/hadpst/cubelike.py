"""Cubelike graphs: Cayley graphs of Z_2^d given by a connection set.

Elements of Z_2^d are stored as Python ints. ``e_i`` is bit ``i - 1``, so
bitstrings are written most significant bit first (``e1`` is ``001`` when
d = 3). Vertex ``x`` of the graph sits at index ``x``, which makes the
transfer partner ``j ^ sigma`` a literal index XOR.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import graphs as _graphs
from . import spectral
from .errors import CapacityError, CertificationError, DomainError
from .hadamard import sylvester
from .pst import PstReport
from .spectral import HALF_PI

MAX_EXHAUSTIVE_D = 5


@dataclass(frozen=True)
class ConnectionSet:
    d: int
    elements: frozenset

    def __post_init__(self):
        if self.d < 0:
            raise DomainError("dimension must be non-negative")
        elems = frozenset(int(x) for x in self.elements)
        if 0 in elems:
            raise DomainError("the zero vector cannot be in a connection set")
        if any(x < 0 or x >= 1 << self.d for x in elems):
            raise DomainError(f"element outside Z_2^{self.d}")
        object.__setattr__(self, "elements", elems)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def bitstrings(self):
        return [format(x, f"0{self.d}b") for x in sorted(self.elements)]

    def __str__(self):
        return "{" + ",".join(self.bitstrings()) + "}"


def basis_vector(i, d):
    if not 1 <= i <= d:
        raise DomainError(f"e{i} does not exist in dimension {d}")
    return 1 << (i - 1)


def parse_element(token, d):
    """``e3``, ``e1+e2`` or a bitstring of length d."""
    token = token.strip()
    if token.startswith("e"):
        x = 0
        for part in token.split("+"):
            part = part.strip()
            if not part.startswith("e") or not part[1:].isdigit():
                raise DomainError(f"bad element {token!r}")
            x ^= basis_vector(int(part[1:]), d)
        return x
    if len(token) != d or set(token) - {"0", "1"}:
        raise DomainError(f"bad bitstring {token!r} for dimension {d}")
    return int(token, 2)


def parse_set(text, d=None):
    """Parse a comma-separated list; ``d`` defaults to the largest index or bitstring length."""
    tokens = [t for t in text.replace(" ", "").split(",") if t]
    if d is None:
        d = 0
        for t in tokens:
            if t.startswith("e"):
                d = max(d, max(int(p[1:]) for p in t.split("+")))
            else:
                d = max(d, len(t))
    return ConnectionSet(d, {parse_element(t, d) for t in tokens})


def dumps_set(c):
    return "".join([f"d={c.d}\n"] + [b + "\n" for b in c.bitstrings()])


def loads_set(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("d="):
        raise DomainError("connection-set file must start with 'd=<int>'")
    d = int(lines[0][2:])
    return ConnectionSet(d, {parse_element(b, d) for b in lines[1:]})


def build(c):
    """The Cayley graph G(C) on 2**d vertices in binary order."""
    n = 1 << c.d
    edges = [(x, x ^ s) for x in range(n) for s in c.elements if x < x ^ s]
    return _graphs.from_edges(n, edges)


def eigenvalues(c):
    """Laplacian eigenvalues in Sylvester column order: ``2 * #{s : s.x odd}``."""
    return [2 * sum(bin(s & x).count("1") & 1 for s in c.elements) for x in range(1 << c.d)]


def sigma(c):
    out = 0
    for x in c.elements:
        out ^= x
    return out


def pst_by_sigma(c):
    """Transfer j -> j ^ sigma at pi/2, or periodicity when sigma is zero."""
    s = sigma(c)
    if s == 0:
        return PstReport("PERIODIC", (), HALF_PI, "sigma")
    pairs = [(j + 1, (j ^ s) + 1) for j in range(1 << c.d) if j < j ^ s]
    return PstReport("PST", pairs, HALF_PI, "sigma")


def row_space(vectors):
    """All GF(2) combinations of the given ints (including 0)."""
    space = {0}
    for v in vectors:
        if v not in space:
            space |= {x ^ v for x in space}
    return space


def code_weight_gcd(c):
    """gcd of Hamming weights in the code spanned by the rows of the d x |C| matrix.

    Only meaningful when sigma is zero; any transfer then happens at
    ``pi / (2 D)``.
    """
    if sigma(c) != 0:
        raise DomainError("sigma is nonzero; transfer happens at pi/2 already")
    elems = sorted(c.elements)
    rows = []
    for bit in range(c.d):
        rows.append(sum(1 << col for col, x in enumerate(elems) if x >> bit & 1))
    out = 0
    for word in row_space(rows):
        out = gcd(out, bin(word).count("1"))
    if out == 0:
        raise DomainError("the code is trivial")
    return out


def rank_gf2(vectors):
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def spans(c):
    """Connectivity test: C spans Z_2^d."""
    return rank_gf2(c.elements) == c.d


def is_bipartite_set(c):
    """G(C) is bipartite iff some linear functional is 1 on every element of C.

    Equivalently, appending a constant 1 coordinate to each element does not
    raise the GF(2) rank. All-odd Hamming weights is the special case where
    the functional is the coordinate sum.
    """
    tagged = [x | 1 << c.d for x in c.elements]
    return rank_gf2(tagged) == rank_gf2(c.elements)


def _split(m):
    """Set S with ``m[i, j] = [i ^ j in S]``, by recursive block splitting."""
    size = m.shape[0]
    if size == 1:
        return {0} if m[0, 0] else set()
    half = size // 2
    a1, x = m[:half, :half], m[:half, half:]
    if not (np.array_equal(a1, m[half:, half:]) and np.array_equal(x, m[half:, :half])
            and np.array_equal(x, x.T)):
        raise CertificationError("block structure fails; matrix is not cubelike")
    return _split(a1) | {s | half for s in _split(x)}


def decompose_standard(a):
    """Recover the connection set of a 0/1 matrix diagonalized by Sylvester.

    Returns ``(C, has_loops)``. ``has_loops`` is True when the diagonal is
    all ones, in which case C describes ``A - I``.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix must be square")
    n = a.shape[0]
    d = n.bit_length() - 1
    if n != 1 << d:
        raise DomainError("order must be a power of two")
    if not np.isin(a, (0, 1)).all() or not np.array_equal(a, a.T):
        raise DomainError("matrix must be symmetric with 0/1 entries")
    diag = set(np.diag(a).tolist())
    if len(diag) != 1:
        raise CertificationError("non-constant diagonal; not diagonalized by Sylvester")
    h = sylvester(d).entries
    prod = h.T @ a.astype(np.int64) @ h
    if np.any(prod - np.diag(np.diag(prod))):
        raise CertificationError("matrix is not diagonalized by the Sylvester matrix")
    s = _split(a.astype(np.int64))
    loops = 0 in s
    return ConnectionSet(d, s - {0}), loops


# -- enumeration ---------------------------------------------------------------

def is_connected_set(c):
    return spans(c)


def has_sigma(c):
    return sigma(c) != 0


def degree_is(r):
    return lambda c: len(c) == r


def all_of(*preds):
    return lambda c: all(p(c) for p in preds)


def enumerate_sets(d, predicate=None, size=None):
    """Yield every connection set of Z_2^d (optionally of one size) passing ``predicate``.

    Sets come out in a fixed order: by size, then lexicographically.
    """
    if d > MAX_EXHAUSTIVE_D:
        raise CapacityError(f"exhaustive enumeration is limited to d <= {MAX_EXHAUSTIVE_D}")
    universe = range(1, 1 << d)
    sizes = [size] if size is not None else range(len(universe) + 1)
    for k in sizes:
        for combo in itertools.combinations(universe, k):
            c = ConnectionSet(d, combo)
            if predicate is None or predicate(c):
                yield c


def _count_chunk(args):
    d, first, size, pred = args
    rest = range(first + 1, 1 << d)
    found = []
    for combo in itertools.combinations(rest, size - 1):
        c = ConnectionSet(d, (first,) + combo)
        if pred is None or pred(c):
            found.append(c)
    return found


def enumerate_parallel(d, predicate, size, workers):
    """Same sets as :func:`enumerate_sets` with fixed ``size``, split by smallest element.

    ``predicate`` must be picklable (a module-level function).
    """
    if d > MAX_EXHAUSTIVE_D:
        raise CapacityError(f"exhaustive enumeration is limited to d <= {MAX_EXHAUSTIVE_D}")
    if size == 0:
        return list(enumerate_sets(d, predicate, 0))
    jobs = [(d, first, size, predicate) for first in range(1, 1 << d)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(_count_chunk, jobs))
    return [c for chunk in chunks for c in chunk]


# -- regular PST family --------------------------------------------------------

def regular_pst_set(k, deg):
    """Connection set that is spanning, non-bipartite, of size deg, with sigma != 0."""
    if k < 3:
        raise DomainError("k must be at least 3")
    if not k + 1 <= deg <= (1 << k) - 2:
        raise DomainError(f"degree must lie in [{k + 1}, {(1 << k) - 2}]")
    core = [basis_vector(i, k) for i in range(1, k + 1)] + [0b11]
    s = list(core)
    for x in range(1, 1 << k):
        if len(s) == deg:
            break
        if x not in s:
            s.append(x)
    if sigma(ConnectionSet(k, s)) == 0:
        # swapping any non-core element for an unused one makes sigma nonzero
        dropped = next(x for x in s if x not in core)
        fresh = next(x for x in range(1, 1 << k) if x not in s)
        s.remove(dropped)
        s.append(fresh)
    return ConnectionSet(k, s)


def regular_pst_family(k, deg):
    """deg-regular connected non-bipartite cubelike graph on 2**k vertices with PST."""
    c = regular_pst_set(k, deg)
    return build(c), c


def certify_cubelike(c):
    return spectral.certify(build(c), sylvester(c.d))
