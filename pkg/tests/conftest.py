import pytest

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(k, ok, text)`` and assert ok."""

    def record(k: int, ok: bool, text: str):
        ACCEPTANCE_RESULTS[k] = (ok, text)
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {text}")
        assert ok, text

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {text}")
