import pytest

from omegabwt import _backend

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=_backend.available())
def backend(request):
    return request.param


@pytest.fixture
def report():
    """Record one acceptance line; shown again in the terminal summary."""
    def add(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
