"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

_OUTCOMES: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _OUTCOMES[number] = (title, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        title, ok = _OUTCOMES[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} {title}")
