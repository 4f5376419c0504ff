from __future__ import annotations

import pytest

_ACCEPTANCE: list = []


@pytest.fixture
def acceptance():
    """Record one criterion outcome: ``acceptance(name, ok, detail)``."""

    def record(name: str, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
