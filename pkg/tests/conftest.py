import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import golden  # noqa: E402
from syntagma.lexstore import build_store  # noqa: E402
from syntagma.recordio import load_database  # noqa: E402

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "golden"

# criterion number -> (title, passed); filled by tests marked with `criterion`
_CRITERIA: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    n, title = marker.args
    ok = report.passed if report.when == "call" else False
    prev = _CRITERIA.get(n)
    _CRITERIA[n] = (title, ok and (prev is None or prev[1]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def corpus_db():
    db = load_database(golden.FORMS_TEXT, golden.LEMMAS_TEXT, golden.CORPUS_MEANINGS_TEXT)
    assert not db.errors, db.errors
    return db


@pytest.fixture(scope="session")
def corpus_store(corpus_db):
    return build_store(corpus_db)
