import numpy as np
import pytest

from pairwalk.coins import Alpha, Hadamard, InteractionRule, Phi

INITIALS = ("sep", "psi-plus", "psi-minus")
INTERACTIONS = (InteractionRule.NONE, InteractionRule.IDENTITY, InteractionRule.PI_PHASE)

# one representative per pair-coin combination: both alpha (same), two
# different alphas, both phi, Hadamard x phi
COIN_COMBINATIONS = {
    "I": (Alpha(0.5), Alpha(0.5)),
    "II": (Alpha(0.0), Alpha(1.25)),
    "III": (Phi(3, 7), Phi(3, 7)),
    "IV": (Hadamard(), Phi(1, 6)),
}


def random_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# ---- acceptance summary: one PASS/FAIL line per criterion --------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when == "teardown":
        return
    number, title = marker.args
    failed = report.failed or (report.when == "setup" and report.skipped)
    prev = _CRITERIA.get(number, (title, "PASS"))[1]
    _CRITERIA[number] = (title, "FAIL" if failed or prev == "FAIL" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}  {verdict}  {title}")
