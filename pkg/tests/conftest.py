import contextlib
import os
import sys
import time

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from foldideals.arrangement import Arrangement  # noqa: E402
from foldideals.exactalg import Ring  # noqa: E402


@pytest.fixture
def R2():
    return Ring(("x", "y"))


@pytest.fixture
def R3():
    return Ring.standard(3)


@pytest.fixture
def pencil():
    """x1, x2, x1+x2 through one point, plus x3."""
    return Arrangement.from_strings(["x1", "x2", "x1 + x2", "x3"])


@pytest.fixture
def generic4():
    return Arrangement.from_strings(["x1", "x2", "x3", "x1 + x2 + x3"])


# acceptance bookkeeping: one PASS/FAIL line per criterion, printed at the end

_SESSION_START = time.monotonic()
_ACCEPTANCE: dict = {}


def session_elapsed() -> float:
    return time.monotonic() - _SESSION_START


@pytest.fixture
def criterion():
    @contextlib.contextmanager
    def record(number: int, title: str):
        t0 = time.monotonic()
        try:
            yield
        except BaseException:
            _ACCEPTANCE[number] = (False, title, time.monotonic() - t0)
            print(f"criterion {number:>2} FAIL  {title}")
            raise
        _ACCEPTANCE[number] = (True, title, time.monotonic() - t0)
        print(f"criterion {number:>2} PASS  {title}")

    return record


def pytest_collection_modifyitems(config, items):
    # acceptance runs last so the wall-clock criterion sees the whole run
    items.sort(key=lambda it: it.nodeid.startswith("tests/test_acceptance.py") or "test_acceptance.py" in it.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, title, secs = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)")
    terminalreporter.write_line(f"total wall time {session_elapsed():.1f}s")
