from __future__ import annotations

import pytest

# criterion number -> [title, passed, details]
ACCEPTANCE: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    number, title = mark.args
    entry = ACCEPTANCE.setdefault(number, [title, True, []])
    entry[1] = entry[1] and rep.passed
    entry[2].extend(str(v) for k, v in item.user_properties if k == "detail" and str(v) not in entry[2])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, details = ACCEPTANCE[number]
        line = f"{'PASS' if ok else 'FAIL'}  {number:2d}  {title}"
        if details:
            line += "  (" + "; ".join(details) + ")"
        terminalreporter.write_line(line)
