from pathlib import Path

import hypothesis
import pytest

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("ci")

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report.criterion = marker.args[0]
        report.title = marker.kwargs.get("title", item.name)


def pytest_terminal_summary(terminalreporter):
    by_criterion: dict[int, list] = {}
    for reports in terminalreporter.stats.values():
        for rep in reports:
            c = getattr(rep, "criterion", None)
            # a call report, or a setup report that failed before the call ran
            if c is None or not (rep.when == "call" or (rep.when == "setup" and rep.failed)):
                continue
            entry = by_criterion.setdefault(c, [True, rep.title, []])
            entry[0] &= rep.passed
            detail = dict(rep.user_properties).get("detail")
            if detail:
                entry[2].append(detail)
    if not by_criterion:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(by_criterion):
        ok, title, details = by_criterion[c]
        line = f"criterion {c:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{'; '.join(details)}]" if details else ""))
