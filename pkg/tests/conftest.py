from fractions import Fraction

import numpy as np
import pytest

import hadpst
from hadpst import cubelike, hadamard, spectral

# -- certificate audit ---------------------------------------------------------
# Every certificate issued anywhere in the run is re-checked here, without the
# library's own checker: exact reconstruction, even integer spectrum and
# regularity for integer weights.

AUDIT = {"count": 0, "violations": []}
_original_certify = spectral.certify


def audit_certificate(cert):
    h = np.array(cert.hadamard.entries, dtype=object)
    n = cert.n
    lam = np.diag(np.array(cert.eigenvalues, dtype=object))
    recon = h @ lam @ h.T
    lap = cert.graph.laplacian()
    problems = []
    if not all(recon[i, j] == n * lap[i, j] for i in range(n) for j in range(n)):
        problems.append("reconstruction")
    if cert.graph.is_integer_weighted():
        if any(Fraction(v).denominator != 1 or Fraction(v).numerator % 2 for v in cert.eigenvalues):
            problems.append("non-even eigenvalue")
        degrees = {sum(row) for row in cert.graph.weights}
        if len(degrees) > 1:
            problems.append("not regular")
    return problems


def _audited_certify(g, h):
    cert = _original_certify(g, h)
    AUDIT["count"] += 1
    problems = audit_certificate(cert)
    if problems:
        AUDIT["violations"].append((repr(g), problems))
        raise AssertionError(f"certificate invariant violated: {problems}")
    return cert


spectral.certify = _audited_certify
hadpst.certify = _audited_certify


# -- acceptance summary ----------------------------------------------------------

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or rep.failed:
        number, title = mark.args
        results = item.config._criteria
        prev = results.get(number, (title, True, 0.0))
        passed = prev[1] and rep.passed
        results[number] = (title, passed, prev[2] + rep.duration)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, secs = results[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title}  ({secs:.2f}s)")


# -- shared fixtures -------------------------------------------------------------

@pytest.fixture(scope="session")
def h8():
    return hadamard.sylvester(3)


@pytest.fixture(scope="session")
def cube():
    return cubelike.build(cubelike.ConnectionSet(3, {1, 2, 4}))


@pytest.fixture(scope="session")
def cube_cert(cube, h8):
    return spectral.certify(cube, h8)


@pytest.fixture(scope="session")
def routing_certs(h8):
    """The two 3-regular routing graphs on 8 vertices, certified."""
    from golden import ROUTING_L1, ROUTING_L2
    from hadpst import graphs
    g1 = graphs.from_laplacian(ROUTING_L1)
    g2 = graphs.from_laplacian(ROUTING_L2)
    return spectral.certify(g1, h8), spectral.certify(g2, h8)
