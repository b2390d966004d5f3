import time
from contextlib import contextmanager

import pytest

ACCEPTANCE: dict[int, tuple[str, bool, float]] = {}


@pytest.fixture
def criterion():
    """Context manager that times one acceptance criterion and records the outcome."""

    @contextmanager
    def run(number: int, title: str, seconds: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            ACCEPTANCE[number] = (title, ok and elapsed < seconds, elapsed)
        assert elapsed < seconds, f"criterion {number} took {elapsed:.2f} s, limit {seconds} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, elapsed = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title} ({elapsed:.2f} s)")
