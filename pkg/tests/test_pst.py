import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from golden import ROUTING_PAIRS_L1
from hadpst import cubelike, families, graphs, hadamard, pst, spectral
from hadpst.errors import DomainError, HypothesisError
from hadpst.spectral import HALF_PI, PiTime
from strategies import sylvester_graphs, weighted_cubelike


def cert_of(g, h=None):
    return spectral.certify(g, h or hadamard.catalog(g.n))


def test_pst_mod4_examples(routing_certs):
    assert pst.pst_mod4(cert_of(graphs.complete(2)), 1, 2)
    l1 = routing_certs[0]
    for j, k in ROUTING_PAIRS_L1:
        assert pst.pst_mod4(l1, j, k)
    c4 = cert_of(graphs.cycle(4))
    assert not pst.pst_mod4(c4, 1, 2)
    assert pst.pst_mod4(c4, 1, 3)
    with pytest.raises(DomainError):
        pst.pst_mod4(c4, 1, 5)


def test_pst_mod4_needs_integer_spectrum():
    quarter = graphs.scale(graphs.complete(2), Fraction(1, 4))
    cert = spectral.certify(quarter, hadamard.sylvester(1))
    with pytest.raises(DomainError):
        pst.pst_mod4(cert, 1, 2)


def test_pst_pairs_examples(cube_cert):
    rep = pst.pst_pairs(cube_cert)
    assert rep.verdict == "PST" and rep.pairs == ((1, 8), (2, 7), (3, 6), (4, 5))
    assert rep.fidelity >= 1 - 1e-9
    k4 = cubelike.build(cubelike.ConnectionSet(2, {1, 2, 3}))
    assert pst.pst_pairs(cert_of(k4)).verdict == "PERIODIC"
    assert pst.pst_pairs(cert_of(graphs.empty(4))).verdict == "NONE"


@settings(max_examples=80, deadline=None)
@given(sylvester_graphs(max_d=4, weights=(1, 2, 3, 5)))
def test_mod4_matches_oracle_random(dg):
    d, g = dg
    cert = spectral.certify(g, hadamard.sylvester(d))
    probs = oracle.probabilities(g.laplacian(), math.pi / 2)
    for j in range(1, g.n + 1):
        for k in range(j + 1, g.n + 1):
            assert pst.pst_mod4(cert, j, k) == (1 - probs[j - 1, k - 1] <= oracle.TOL)
    rep = pst.pst_pairs(cert, check=False)
    seen = [v for p in rep.pairs for v in p]
    assert len(seen) == len(set(seen))


def test_report_json_roundtrip(cube_cert):
    rep = pst.pst_pairs(cube_cert)
    back = pst.PstReport.loads(rep.dumps())
    assert back == rep
    obj = rep.to_json_obj()
    assert obj["time"] == "1/2 * pi" and obj["pairs"][0] == [1, 8]
    with pytest.raises(DomainError):
        pst.PstReport("MAYBE")
    with pytest.raises(DomainError):
        pst.PstReport("PST", ())
    with pytest.raises(DomainError):
        pst.PstReport.from_json_obj({"pairs": []})


def test_gcd_rescale():
    g2, a = pst.gcd_rescale(graphs.scale(graphs.complete(2), 2))
    assert (g2, a) == (graphs.complete(2), 2)
    assert pst.gcd_rescale(graphs.complete(2)) == (graphs.complete(2), 1)
    p3 = graphs.from_edges(3, [(0, 1, 6), (1, 2, 10)])
    assert pst.gcd_rescale(p3)[1] == 2
    # the doubled edge transfers at pi/4
    assert spectral.evolve_fidelity(graphs.scale(graphs.complete(2), 2), math.pi / 4, 1, 2) > 1 - 1e-12
    with pytest.raises(DomainError):
        pst.gcd_rescale(graphs.empty(3))


def test_rational_rescale():
    g = graphs.from_edges(3, [(0, 1, Fraction(1, 2)), (1, 2, Fraction(3, 2))])
    g2, t1 = pst.rational_rescale(g)
    assert sorted(w for _, _, w in g2.edges()) == [1, 3] and t1 == PiTime(1)
    assert pst.rational_rescale(graphs.cycle(4)) == (graphs.cycle(4), HALF_PI)
    l1 = families.order12_laplacian()
    assert not l1.is_integer_weighted()
    l1_int, t1 = pst.rational_rescale(l1)
    assert l1_int.is_integer_weighted() and l1_int == graphs.scale(l1, 3) and t1 == PiTime(Fraction(3, 2))
    with pytest.raises(DomainError):
        pst.rational_rescale(graphs.empty(2))


def test_pst_report_rescales_rational_graph():
    rep = pst.pst_report(graphs.scale(graphs.complete(2), Fraction(1, 3)), hadamard.sylvester(1))
    assert rep.verdict == "PST" and rep.time == PiTime(Fraction(3, 2))
    assert rep.rule.endswith("+rescaled")
    assert spectral.evolve_fidelity(graphs.scale(graphs.complete(2), Fraction(1, 3)),
                                    float(rep.time), 1, 2) > 1 - 1e-9


def test_order12_merge_case():
    h12 = hadamard.catalog(12)
    c1 = spectral.certify(families.order12_laplacian(), h12)
    c2 = spectral.certify(graphs.complete(12), h12)
    rep = pst.merge_pst(c1, c2, 5, 2)
    assert rep.verdict == "PST" and (1, 2) in rep.pairs
    assert rep.rule.startswith("merge-1a")


def test_cross_pairs_from_clique_blocks(cube_cert, h8):
    # G2 = two disjoint K4: odd degree and every eigenvalue a multiple of 4,
    # so each PST pair (p, q) of G1 becomes a cross pair (p, q + n).
    two_k4 = cubelike.build(cubelike.ConnectionSet(3, {1, 2, 3}))
    rep = pst.merge_pst(cube_cert, spectral.certify(two_k4, h8), 1, 1)
    assert rep.rule == "merge-3b"
    assert set(rep.pairs) == {(p, q + 8) for p, q in [(1, 8), (8, 1), (2, 7), (7, 2),
                                                      (3, 6), (6, 3), (4, 5), (5, 4)]}


def test_small_merge_uses_sum_rule(h8):
    c1 = spectral.certify(graphs.cycle(4), hadamard.sylvester(2))
    g2 = graphs.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    c2 = spectral.certify(g2, hadamard.sylvester(2))
    rep = pst.merge_pst(c1, c2, 1, 1)
    lap = graphs.merge(c1.graph, c2.graph).laplacian()
    assert (rep.verdict, list(rep.pairs)) == oracle.verdict(lap, float(rep.time))
    assert rep.rule == "merge-1c+merge-2c"


def test_even_weights_factor_out(cube_cert):
    rep = pst.merge_pst(cube_cert, cube_cert, 2, 6)
    assert rep.time == PiTime(Fraction(1, 4))
    assert rep.notes == ("weights reduced by 2**1",)
    lap = graphs.merge(cube_cert.graph, cube_cert.graph, 2, 6).laplacian()
    assert (rep.verdict, list(rep.pairs)) == oracle.verdict(lap, float(rep.time))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 3).flatmap(lambda d: st.tuples(
    st.just(d), sylvester_graphs(min_d=d, max_d=d), sylvester_graphs(min_d=d, max_d=d))),
    st.sampled_from([1, 2, 3, 4, -1, 6]), st.sampled_from([1, 2, 3, 4, -3, 8]))
def test_merge_pst_matches_oracle(args, w1, w2):
    d, (_, g1), (_, g2) = args
    h = hadamard.sylvester(d)
    rep = pst.merge_pst(spectral.certify(g1, h), spectral.certify(g2, h), w1, w2, check=False)
    lap = graphs.merge(g1, g2, w1, w2).laplacian()
    assert (rep.verdict, list(rep.pairs)) == oracle.verdict(lap, float(rep.time))


def test_merge_hypothesis_detector(cube, h8):
    k8 = graphs.complete(8)
    tri = graphs.from_edges(8, [(0, 1), (0, 2), (1, 2)])
    k8_minus = graphs.WeightedGraph(k8.weights - tri.weights)
    problems = pst.merge_hypotheses(k8_minus, cube, h8)
    assert problems and "G1" in problems[0]
    with pytest.raises(HypothesisError) as err:
        pst.merge_pst_graphs(k8_minus, cube, 2, 1, h8)
    assert err.value.violations == problems


def test_merge_rejects_mismatched_inputs(cube_cert):
    c4 = spectral.certify(graphs.cycle(4), hadamard.sylvester(2))
    with pytest.raises(DomainError):
        pst.merge_pst(cube_cert, c4, 1, 1)
    with pytest.raises(DomainError):
        pst.merge_pst(cube_cert, cube_cert, Fraction(1, 2), 1)
    assert pst.merge_pst(cube_cert, cube_cert, 0, 0).verdict == "NONE"


def test_merged_spectrum_matches_certificate(cube_cert, h8):
    two_k4 = weighted_cubelike(3, {1: 1, 2: 1, 3: 1})
    c2 = spectral.certify(two_k4, h8)
    merged = graphs.merge(cube_cert.graph, two_k4, 3, 2)
    cert = spectral.certify(merged, h8.double())
    assert cert.eigenvalues == pst.merged_spectrum(cube_cert, c2, 3, 2)


def test_mod4_matches_oracle_on_500_sets_of_z2_4():
    rng = np.random.default_rng(2024)
    h = hadamard.sylvester(4)
    seen = set()
    while len(seen) < 500:
        mask = int(rng.integers(1, 1 << 15))
        if mask in seen:
            continue
        seen.add(mask)
        c = cubelike.ConnectionSet(4, [x for x in range(1, 16) if mask >> (x - 1) & 1])
        g = cubelike.build(c)
        cert = spectral.certify(g, h)
        probs = oracle.probabilities(g.laplacian(), math.pi / 2)
        numeric = {(j + 1, k + 1) for j in range(16) for k in range(j + 1, 16)
                   if 1 - probs[j, k] <= oracle.TOL}
        exact = {(j, k) for j in range(1, 17) for k in range(j + 1, 17) if pst.pst_mod4(cert, j, k)}
        assert exact == numeric, str(c)
