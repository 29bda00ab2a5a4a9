import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from centroid_sum.text import load_stopwords  # noqa: E402


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords()


@pytest.fixture(autouse=True)
def _default_stopwords(monkeypatch):
    monkeypatch.delenv("CENTROID_SUM_STOPWORDS", raising=False)


_ACCEPTANCE: list[tuple[str, bool | None, str]] = []


def record_criterion(name: str, passed: bool | None, detail: str = "") -> None:
    """``passed=None`` marks a criterion that could not run here."""
    _ACCEPTANCE.append((name, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        status = "SKIP" if passed is None else "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}" + (f"  ({detail})" if detail else ""))
