import pytest

CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion.

    The number comes from ``@pytest.mark.criterion(k)``; call
    ``criterion(detail)`` to attach a summary of what was measured.
    """
    marker = request.node.get_closest_marker("criterion")
    state = {}

    def record(detail):
        state["detail"] = detail

    yield record
    if marker is None:
        return
    k = marker.args[0]
    failed = getattr(request.node, "rep_call", None) is not None and request.node.rep_call.failed
    line = f"[{'FAIL' if failed else 'PASS'}] criterion {k}: {state.get('detail', request.node.name)}"
    CRITERIA[k] = line
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
