import cmath
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hadpst import analysis, cubelike, graphs, hadamard, spectral
from hadpst.errors import CapacityError, DomainError, RangeError, UnsupportedError
from hadpst.spectral import HALF_PI
from strategies import sylvester_graphs


def test_timing_drop_zero_offset(cube_cert):
    out = analysis.timing_drop(cube_cert, HALF_PI, 0.0)
    assert abs(out.drop) < 1e-12 and math.isclose(out.ring_sum, 1.0)
    assert out.pair == (1, 8)


def test_timing_drop_single_edge():
    cert = spectral.certify(graphs.complete(2), hadamard.sylvester(1))
    out = analysis.timing_drop(cert, HALF_PI, 0.1)
    assert math.isclose(out.ring_sum, abs(1 + cmath.exp(0.2j)) / 2, rel_tol=1e-12)
    assert abs(out.drop - (1 - out.ring_sum ** 2)) < 1e-10


def test_timing_drop_cube(cube_cert):
    h = 0.05
    out = analysis.timing_drop(cube_cert, "1/2pi", h)
    direct = abs(sum(cmath.exp(1j * h * v) for v in (0, 2, 2, 2, 4, 4, 4, 6))) / 8
    assert math.isclose(out.ring_sum, direct, rel_tol=1e-12)
    assert abs(out.drop - out.predicted) < 1e-10


def test_timing_drop_errors(cube_cert):
    with pytest.raises(RangeError):
        analysis.timing_drop(cube_cert, HALF_PI, math.pi / 6)
    k4 = spectral.certify(graphs.complete(4), hadamard.sylvester(2))
    with pytest.raises(DomainError):
        analysis.timing_drop(k4, HALF_PI, 0.01)
    out = analysis.timing_drop(k4, HALF_PI, 0.01, pair=(1, 1))
    assert out.pair == (1, 1)


@settings(max_examples=40, deadline=None)
@given(sylvester_graphs(max_d=4), st.floats(-3, 3))
def test_ring_sum_identity(dg, h):
    d, g = dg
    cert = spectral.certify(g, hadamard.sylvester(d))
    assert abs(analysis.ring_sum(cert, h) - analysis.ring_sum_direct(g, h)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(
    st.just(d), st.sets(st.integers(1, (1 << d) - 1), min_size=1))))
def test_trace_identities_on_cubelike(args):
    d, elems = args
    cert = cubelike.certify_cubelike(cubelike.ConnectionSet(d, elems))
    checks = analysis.trace_identities(cert)
    assert all(checks.values()), checks


def test_trace_identities_need_unweighted(cube):
    cert = spectral.certify(graphs.scale(cube, 2), hadamard.sylvester(3))
    with pytest.raises(DomainError):
        analysis.trace_identities(cert)


@pytest.mark.parametrize("r,n", [(1, 2), (2, 4), (3, 8)])
def test_eigencount_forced_order(r, n):
    system = analysis.eigencount_solve(r)
    assert system.n == n and system.n_max == n and not system.free


def test_eigencount_cube_counts():
    system = analysis.eigencount_solve(3)
    assert {e: system.count(e) for e in (2, 4, 6)} == {2: 3, 4: 3, 6: 1}
    assert system.satisfied_by(8, {2: 3, 4: 3, 6: 1})
    assert not system.satisfied_by(8, {2: 2, 4: 4, 6: 1})
    assert not system.satisfied_by(16, {2: 3, 4: 3, 6: 1})


def test_eigencount_degree_four():
    system = analysis.eigencount_solve(4)
    assert system.free and system.n is None and system.n_max == 16
    assert system.counts == {
        2: (Fraction(3, 8), Fraction(-2)),
        4: (Fraction(3, 8), Fraction(0)),
        6: (Fraction(1, 8), Fraction(2)),
        8: (Fraction(1, 8), Fraction(-1)),
    }
    assert system.count(2, 16) == 4
    obj = system.to_json_obj()
    assert obj["n_max"] == 16 and obj["counts"]["8"] == ["1/8", "-1"]


def test_eigencount_domain():
    with pytest.raises(UnsupportedError):
        analysis.eigencount_solve(5)
    with pytest.raises(DomainError):
        analysis.eigencount_solve(0)


def test_sparsity_corpus_degree_three():
    report = analysis.verify_sparsity_corpus(3, 4)
    assert report["bound"] == 8 and report["max_n"] == 8
    assert not report["violations"]
    # three spanning elements of Z_2^3 form a basis: every hit is a relabelled 3-cube
    assert report["qualifying"] and all(q["k"] == 3 for q in report["qualifying"])
    assert all(q["eigencounts"] == {"2": 3, "4": 3, "6": 1} for q in report["qualifying"])


@pytest.mark.parametrize("r", [1, 2, 4])
def test_sparsity_corpus_bound(r):
    report = analysis.verify_sparsity_corpus(r, 4)
    assert not report["violations"]
    assert report["max_n"] is None or report["max_n"] <= 1 << r
    assert all(q["fits_eigencount_system"] for q in report["qualifying"])
    json.loads(analysis.dumps_report(report))


def test_sparsity_corpus_parallel_matches():
    assert analysis.verify_sparsity_corpus(4, 4, workers=2) == analysis.verify_sparsity_corpus(4, 4)


def test_sparsity_capacity():
    with pytest.raises(CapacityError):
        analysis.verify_sparsity_corpus(3, 6)


def test_bound_reexport():
    assert analysis.fidelity_perturbation_bound(0) == 0
    assert analysis.fidelity_perturbation_bound(1) == 2
