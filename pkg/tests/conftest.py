import os
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class AcceptanceRecorder:
    @contextmanager
    def criterion(self, number: int, title: str, time_limit: float | None = None):
        """Record PASS/FAIL for one criterion; an exception or a blown time limit counts as FAIL."""
        start = time.perf_counter()
        _ACCEPTANCE[number] = (False, f"{title} (did not finish)")
        yield
        elapsed = time.perf_counter() - start
        within = time_limit is None or elapsed < time_limit
        limit = "" if time_limit is None else f" / limit {time_limit:g}s"
        _ACCEPTANCE[number] = (within, f"{title} [{elapsed:.2f}s{limit}]")
        assert within, f"criterion {number} took {elapsed:.2f}s, limit {time_limit}s"


@pytest.fixture
def acceptance():
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, text = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")
