"""Hadamard matrices: Sylvester construction, validation, normalization, I/O."""

import hashlib
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import CapacityError, DomainError, InvariantError, NotInCatalogError

MAX_SYLVESTER_K = 13

_ORDER12_FILE = "order12_hadamard.txt"
_ORDER12_SHA256 = "f2e8777f40762c88e4f1a914ef06b3e53fd7ec95a08956e2c2f31225a32307f5"


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    """An n x n matrix of ±1 entries with ``H @ H.T == n * I``.

    The entries are kept in a read-only int64 array. Construction validates
    the defining identity, so every instance is a genuine Hadamard matrix.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64)
        if not is_hadamard(arr):
            raise DomainError("matrix is not a Hadamard matrix")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def order(self):
        return self.entries.shape[0]

    def __eq__(self, other):
        if not isinstance(other, HadamardMatrix):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"HadamardMatrix(order={self.order})"

    def double(self):
        """Return ``[[H, H], [H, -H]]``."""
        h = self.entries
        return HadamardMatrix(np.block([[h, h], [h, -h]]))

    def is_normalized(self):
        return bool((self.entries[0] == 1).all() and (self.entries[:, 0] == 1).all())


def is_hadamard(m):
    """True iff ``m`` is square with ±1 entries and ``m @ m.T == n I``.

    Non-square input gives False. The product is formed in float64, which is
    exact here: every entry of ``m @ m.T`` is an integer of magnitude at most
    n, far below 2**53.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        return False
    if not np.isin(m, (1, -1)).all():
        return False
    n = m.shape[0]
    if n > 2 and n % 4:
        return False
    f = m.astype(np.float64)
    return bool(np.array_equal(f @ f.T, n * np.eye(n)))


def sylvester(k):
    """Standard Hadamard matrix of order ``2**k`` by recursive doubling."""
    if k < 0:
        raise DomainError("k must be non-negative")
    if k > MAX_SYLVESTER_K:
        raise CapacityError(f"2**{k} exceeds the supported order 2**{MAX_SYLVESTER_K}")
    h = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return HadamardMatrix(h)


def normalize(h):
    """Sign columns, then rows, so the first row and column are all +1.

    Returns ``(normalized, column_signs, row_signs)``. The original matrix is
    recovered as ``diag(row_signs) @ normalized @ diag(column_signs)``.
    """
    e = h.entries
    col = e[0].copy()
    signed = e * col[None, :]
    row = signed[:, 0].copy()
    out = signed * row[:, None]
    return HadamardMatrix(out), col, row


def _load_order12():
    raw = resources.files("hadpst.data").joinpath(_ORDER12_FILE).read_bytes()
    if hashlib.sha256(raw).hexdigest() != _ORDER12_SHA256:
        raise InvariantError("order-12 Hadamard data file failed its checksum")
    return parse_text(raw.decode())


def catalog(order):
    """Return a known Hadamard matrix of the given order.

    Supported orders are ``2**k`` (Sylvester) and ``12 * 2**k`` (the shipped
    order-12 matrix, doubled k times).
    """
    if order < 1:
        raise NotInCatalogError(f"no Hadamard matrix of order {order}")
    k = 0
    base = order
    while base % 2 == 0:
        base //= 2
        k += 1
    if base == 1:
        return sylvester(k)
    if base == 3 and k >= 2:
        h = _load_order12()
        for _ in range(k - 2):
            h = h.double()
        return h
    raise NotInCatalogError(f"order {order} is not in the catalog")


def parse_text(text):
    """Read the row-per-line text format (``+``/``-`` or ``1``/``-1``)."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for tok in line.split():
            if tok in ("1", "+1", "+"):
                row.append(1)
            elif tok in ("-1", "-"):
                row.append(-1)
            elif set(tok) <= {"+", "-"}:
                row.extend(1 if c == "+" else -1 for c in tok)
            else:
                raise DomainError(f"bad Hadamard entry {tok!r}")
        rows.append(row)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise DomainError("Hadamard text must describe a square matrix")
    return HadamardMatrix(np.array(rows, dtype=np.int64))


def format_text(h):
    return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in h.entries)


def resolve(spec, n=None):
    """Turn ``sylvester:k``, ``catalog:N`` or ``auto`` into a matrix.

    ``auto`` (or None) picks ``catalog(n)``.
    """
    if spec is None or spec == "auto":
        if n is None:
            raise DomainError("order needed to resolve an automatic Hadamard choice")
        return catalog(n)
    kind, _, arg = spec.partition(":")
    if kind == "sylvester":
        return sylvester(int(arg))
    if kind == "catalog":
        return catalog(int(arg))
    raise DomainError(f"unknown Hadamard spec {spec!r}")
