import pytest

ACCEPTANCE_TITLES = {
    1: "cosine identity suite",
    2: "small element classifier round trip",
    3: "unit criterion for cosine values",
    4: "square-class case split never contradicted",
    5: "gamma values of Q, Q(sqrt2), Q(sqrt3)",
    6: "fundamental units against brute-force Pell",
    7: "represented unit class bound battery",
    8: "three squares represent every small totally positive integer of Q(sqrt5)",
    9: "representation completeness against box search",
    10: "prime sequence",
    11: "squarefree triples",
    12: "house below 2 witnesses",
    13: "local witnesses exhaustive",
    14: "CLI determinism",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test backing acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes.setdefault(marker.args[0], []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in ACCEPTANCE_TITLES.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status} {n:2d} {title}")
