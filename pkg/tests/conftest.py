import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repo", deadline=None, max_examples=40, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

import contextlib
import time

import pytest

_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line for an acceptance criterion."""
    @contextlib.contextmanager
    def record(number, title, limit=None):
        start = time.perf_counter()
        state = {"ok": False}
        try:
            yield state
        finally:
            secs = time.perf_counter() - start
            ok = state["ok"] and (limit is None or secs < limit)
            note = f"{secs:.2f}s" + (f" (limit {limit}s)" if limit else "")
            line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{note}]"
            _ACCEPTANCE[number] = line
            print("\n" + line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
