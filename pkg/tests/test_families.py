import itertools
import math
from fractions import Fraction

import pytest

import oracle
from hadpst import cubelike, families, graphs, hadamard, pst, spectral
from hadpst.errors import DomainError, HypothesisError


def k22_pair():
    return cubelike.build(cubelike.ConnectionSet(3, {0b001, 0b010}))


def test_complement_of_two_squares():
    g, rep = families.pst_complement(spectral.certify(k22_pair(), hadamard.sylvester(3)))
    assert graphs.degree_profile(g) == (True, 5)
    assert rep.verdict == "PST"
    assert oracle.verdict(g.laplacian(), math.pi / 2)[1] == list(rep.pairs)


def test_complement_of_cube(cube_cert):
    g, rep = families.pst_complement(cube_cert)
    assert graphs.degree_profile(g) == (True, 4)
    assert rep.pairs == pst.pst_pairs(cube_cert).pairs
    g2, rep2 = families.pst_complement(spectral.certify(g, cube_cert.hadamard))
    assert g2 == cube_cert.graph and rep2 == pst.pst_pairs(cube_cert)


def test_self_join(cube_cert):
    g, rep = families.pst_self_join(cube_cert)
    assert g.n == 16 and graphs.degree_profile(g) == (True, 11)
    assert (1, 8) in rep.pairs
    assert oracle.fidelity(g.laplacian(), math.pi / 2, 1, 8) > 1 - 1e-9


def test_join_of_complements_is_ten_regular():
    g5, _ = families.pst_complement(spectral.certify(k22_pair(), hadamard.sylvester(3)))
    gc = graphs.complement(g5)
    g, rep = families.pst_self_join(spectral.certify(gc, hadamard.sylvester(3)))
    assert graphs.degree_profile(g) == (True, 10) and rep.verdict == "PST"


def test_hypotheses_enforced():
    with pytest.raises(HypothesisError) as err:
        families.pst_complement(spectral.certify(graphs.complete(2), hadamard.sylvester(1)))
    assert "at least 4" in err.value.violations[0]
    weighted = graphs.scale(cubelike.build(cubelike.ConnectionSet(2, {1, 2})), 3)
    with pytest.raises(HypothesisError):
        families.pst_self_join(spectral.certify(weighted, hadamard.sylvester(2)))
    with pytest.raises(HypothesisError):
        families.pst_complement(spectral.certify(graphs.complete(4), hadamard.sylvester(2)))


def test_weighted_hypercube_examples():
    g, rep = families.weighted_hypercube([1, 1, 1])
    assert rep.pairs == ((1, 8), (2, 7), (3, 6), (4, 5))
    g, rep = families.weighted_hypercube([2, 2])
    assert rep.verdict == "PERIODIC"
    assert oracle.verdict(g.laplacian(), math.pi / 2)[0] == "PERIODIC"
    g, rep = families.weighted_hypercube([1, 2, 3])
    # first and third coordinates flip: 000 -> 101
    assert (1, 6) in rep.pairs
    with pytest.raises(DomainError):
        families.weighted_hypercube([1, 0])
    with pytest.raises(DomainError):
        families.weighted_hypercube([Fraction(1, 2)])
    with pytest.raises(DomainError):
        families.weighted_hypercube([])


PARITY_PATTERNS = [w for m in range(1, 5) for w in itertools.product((1, 2), repeat=m)]


@pytest.mark.parametrize("weights", PARITY_PATTERNS + [(3, 4), (-1, 6, 5), (4, -3, 2, 7)])
def test_hypercube_partner_law(weights):
    g, rep = families.weighted_hypercube(list(weights))
    m = len(weights)
    probs = oracle.probabilities(g.laplacian(), math.pi / 2)
    mask = sum(1 << (m - 1 - i) for i, w in enumerate(weights) if w % 2)
    for u in range(1 << m):
        assert probs[u, u ^ mask] > 1 - 1e-9
        assert bin(u ^ (u ^ mask)).count("1") == sum(w % 2 for w in weights)


def test_regular_family_base_cases():
    g, rep = families.regular_family(3, 4)
    k2 = graphs.complete(2)
    k22 = cubelike.build(cubelike.ConnectionSet(2, {1, 2}))
    assert g == graphs.complement(graphs.cartesian_product(k22, k2))
    assert "base" in rep.rule
    g6, _ = families.regular_family(3, 6)
    assert g6 == graphs.complement(graphs.perfect_matching(8))


def test_regular_family_case_selection():
    g, rep = families.regular_family(4, 7)
    assert "case 1" in rep.rule
    g2, rep2 = families.regular_family(4, 7, case="2")
    assert "r=2, d'=4" in rep2.rule
    assert all(families.family_properties(g2, 7).values())
    with pytest.raises(DomainError):
        families.regular_family(4, 7, case="join")
    with pytest.raises(DomainError):
        families.regular_family(4, 15)
    with pytest.raises(DomainError):
        families.regular_family(2, 3)


@pytest.mark.parametrize("k,deg", [(k, d) for k in (3, 4, 5) for d in range(k + 1, (1 << k) - 1)])
def test_regular_family_properties(k, deg):
    g, rep = families.regular_family(k, deg)
    props = families.family_properties(g, deg)
    assert all(props.values()), props
    assert rep.verdict == "PST"


@pytest.mark.parametrize("k", [3, 4])
def test_degree_coverage(k):
    full = set(range(k + 2, (1 << (k + 1)) - 1))
    covered = families.degree_coverage(k)
    assert covered == full
    for deg in sorted(full):
        assert families.family_cases(k + 1, deg), deg
    plain = families.degree_coverage(k, with_extras=False)
    assert plain <= full


def test_plain_interval_union_gaps():
    assert set(range(5, 15)) - families.degree_coverage(3, with_extras=False) == {10, 14}


def test_order12_graph():
    l1 = families.order12_laplacian()
    assert l1.n == 12
    assert {w.denominator for _, _, w in l1.edges()} <= {1, 3}
    rep = pst.pst_report(l1, hadamard.catalog(12))
    assert rep.verdict == "PST" and (1, 2) in rep.pairs
    assert oracle.fidelity(l1.laplacian(), float(rep.time), 1, 2) > 1 - 1e-9


def test_order12_merge():
    g, rep, cert = families.order12_pst_merge()
    assert g.n == 24 and rep.rule == "merge-1a+merge-2a"
    assert rep.pairs[:1] == ((1, 2),)
    assert cert.hadamard.order == 24
