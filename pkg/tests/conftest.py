import pytest

CRITERIA = {
    1: "undemanding verdicts on the labelled theories",
    2: "assignment count 3^|T| and enumerator visit count",
    3: "oracle equivalence with 2-element projection/constant model search",
    4: "exact PL certification of the catalog",
    5: "mutants refuted with exact rational points",
    6: "squaring theory: power algebras and perfect-square sizes",
    7: "Mal'tsev through the meet of groups and minority",
    8: "symmetric-difference interpretation and its broken variant",
    9: "median and minority on the Y tree grid",
    10: "interval ring sampling and its mutants",
}

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes.setdefault(n, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n, label in CRITERIA.items():
        runs = _outcomes.get(n)
        status = "NOT RUN" if not runs else ("PASS" if all(runs) else "FAIL")
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {label}")
