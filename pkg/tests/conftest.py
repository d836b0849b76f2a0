import pytest

ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion."""
    name = request.node.name
    ACCEPTANCE[name] = ("FAIL", "")

    def record(detail):
        ACCEPTANCE[name] = ("PASS", detail)

    yield record


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if report.skipped and "test_acceptance" in report.nodeid:
        ACCEPTANCE[name] = ("SKIP", str(report.longrepr[-1]) if report.longrepr else "")
    elif report.when == "call" and report.failed and name in ACCEPTANCE:
        ACCEPTANCE[name] = ("FAIL", ACCEPTANCE[name][1])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{status:4s} {name}  {detail}")
