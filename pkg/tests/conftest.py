import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, dict] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria.setdefault(number, {"title": title, "passed": True, "ran": 0})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    entry = _criteria[mark.args[0]]
    if report.when == "call":
        entry["ran"] += 1
    if report.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        ok = entry["passed"] and entry["ran"] > 0
        terminalreporter.write_line(
            f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {entry['title']}")


@pytest.fixture(scope="session")
def analyzer():
    from fstag.pipeline import Analyzer
    return Analyzer.default()


@pytest.fixture(scope="session")
def pack():
    from fstag.rules import default_rule_pack
    return default_rule_pack()


@pytest.fixture(scope="session")
def lexicon(analyzer):
    return analyzer.lexicon


@pytest.fixture(scope="session")
def guesser(analyzer):
    return analyzer.guesser
