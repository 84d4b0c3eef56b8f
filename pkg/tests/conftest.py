"""Shared fixtures: the acceptance-criteria reporter."""

import pytest

_criterion_lines: list[str] = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""

    def _report(label: str, description: str, ok: bool, detail: str = ""):
        verdict = "PASS" if ok else "FAIL"
        _criterion_lines.append(f"criterion {label}: {verdict} - {description}")
        assert ok, f"criterion {label} failed: {description} {detail}".rstrip()

    return _report


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
