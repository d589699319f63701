import pytest

_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion(capsys):
    """Record one acceptance line; printed live and again in the terminal summary."""
    def record(number: int, passed: bool, detail: str) -> None:
        _RESULTS[number] = (passed, detail)
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if passed else 'FAIL'}: {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        ok, detail = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
