import os
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_VERDICTS: dict[int, tuple[bool, str]] = {}


@contextmanager
def _criterion(number: int, label: str):
    notes: list[str] = []
    try:
        yield notes
    except BaseException as exc:
        _VERDICTS[number] = (False, f"{label}: {exc}".splitlines()[0][:200])
        raise
    _VERDICTS[number] = (True, "; ".join([label, *notes]))


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line for an acceptance criterion."""
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        ok, text = _VERDICTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {text}")
