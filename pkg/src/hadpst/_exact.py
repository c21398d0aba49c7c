"""Exact rational matrix helpers built on numpy object arrays of Fractions."""

from fractions import Fraction
from math import gcd, lcm

import numpy as np

_INT64_SAFE = 2**62


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        f = Fraction(float(x))
        if f.denominator > 2**20:
            raise TypeError(f"refusing to convert inexact float {x!r} to a rational")
        return f
    return Fraction(x)


def fraction_matrix(rows):
    """Return a read-only object array of Fractions."""
    arr = np.asarray(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = as_fraction(v)
    out.setflags(write=False)
    return out


def zeros(n, m=None):
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    out.fill(Fraction(0))
    return out


def common_denominator(mat):
    den = 1
    for v in mat.flat:
        den = lcm(den, v.denominator)
    return den


def integer_content(mat):
    """gcd of all entries of an integer-valued Fraction matrix."""
    g = 0
    for v in mat.flat:
        g = gcd(g, v.numerator)
    return g


def scaled_integer(mat):
    """Return ``(M, den)`` with ``M = den * mat`` as an integer array.

    ``M`` is int64 when the values are small enough that products with a
    ±1 matrix of the same order cannot overflow, otherwise a Python-int
    object array.
    """
    den = common_denominator(mat)
    ints = [[(v * den).numerator for v in row] for row in mat]
    n = mat.shape[0]
    biggest = max((abs(v) for row in ints for v in row), default=0)
    if biggest * max(n, 1) ** 2 < _INT64_SAFE:
        return np.array(ints, dtype=np.int64).reshape(mat.shape), den
    return np.array(ints, dtype=object).reshape(mat.shape), den


def to_float(mat):
    return np.array([[float(v) for v in row] for row in mat], dtype=float).reshape(mat.shape)


def fraction_str(x):
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
