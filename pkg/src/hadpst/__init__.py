"""Exact perfect state transfer on Hadamard-diagonalizable graphs."""

from . import errors, hadamard, graphs, spectral, pst, pgst, cubelike, families, analysis
from .errors import (CapacityError, CertificationError, DomainError, HadpstError,
                     HypothesisError, InvariantError, NumericError)
from .graphs import WeightedGraph
from .hadamard import HadamardMatrix, catalog, sylvester
from .pgst import ParityClass, QuadraticIrrational, pgst_approximants, pgst_sequence
from .pst import PstReport, merge_pst, pst_mod4, pst_pairs
from .spectral import HALF_PI, PiTime, SpectralCertificate, certify

__version__ = "0.1.0"
