import pytest

from bihomns.corpus import DEFAULT_SEED, build_corpus

# criterion number -> (title, outcome); filled by tests in test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(DEFAULT_SEED)


def pytest_runtest_makereport(item, call):
    crit = item.get_closest_marker("criterion")
    if crit is None or call.when != "call":
        return
    num, title = crit.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    if ACCEPTANCE.get(num, (title, "PASS"))[1] == "FAIL":
        outcome = "FAIL"
    ACCEPTANCE[num] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, outcome = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{outcome}] {num:2d}. {title}")
