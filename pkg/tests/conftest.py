"""Shared pytest plumbing for the acceptance suite's summary lines."""

_ACCEPTANCE_LINES: list[tuple[int, str]] = []


def record(index: int, label: str, ok: bool, detail: str = "") -> None:
    """Queue one PASS/FAIL line for the end-of-run summary section."""
    status = "PASS" if ok else "FAIL"
    tail = f"  ({detail})" if detail else ""
    _ACCEPTANCE_LINES.append((index, f"{index:2d}. {label}: {status}{tail}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
    _ACCEPTANCE_LINES.clear()
