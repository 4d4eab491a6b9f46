from __future__ import annotations

import contextlib
import time

import pytest

_LINES: list[str] = []


class _Criterion:
    def __init__(self):
        self.detail = ""


@pytest.fixture
def criterion():
    """``with criterion(3, "title") as c: ...`` records one PASS/FAIL line."""
    @contextlib.contextmanager
    def run(number: int, title: str):
        c = _Criterion()
        start = time.perf_counter()
        try:
            yield c
        except BaseException as exc:
            secs = time.perf_counter() - start
            msg = c.detail or f"{type(exc).__name__}: {exc}".splitlines()[0]
            line = f"criterion {number} FAIL ({secs:.1f}s) {title}: {msg}"
            _LINES.append(line)
            print(line)
            raise
        secs = time.perf_counter() - start
        line = f"criterion {number} PASS ({secs:.1f}s) {title}: {c.detail}"
        _LINES.append(line)
        print(line)
    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
