import pytest

from cfintegrals.constants import e_enclosure, ln2_enclosure, pi_enclosure


def eform_interval(form, digits=None):
    """Certified enclosure of an EForm using an e enclosure sized to its
    coefficient."""
    if digits is None:
        digits = 40 + 2 * len(str(abs(form.e_coeff)))
    return form.interval(e_enclosure(digits))


def eform_float(form):
    return float(eform_interval(form).mid)


def piform_float(form, digits=60):
    return float(form.interval(pi_enclosure(digits), ln2_enclosure(digits)).mid)


@pytest.fixture
def no_numba(monkeypatch):
    monkeypatch.setenv("CFINTEGRALS_DISABLE_NUMBA", "1")


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        if report.outcome != "passed" or name not in _ACCEPTANCE:
            _ACCEPTANCE[name] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")
