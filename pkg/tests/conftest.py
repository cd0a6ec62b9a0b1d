import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("qtwo", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("qtwo")

ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def acceptance_report():
    """Record one line per acceptance criterion; printed in the terminal summary."""
    def record(number: int, title: str, ok: bool, seconds: float, limit: float, note: str = ""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES[number] = (f"criterion {number:>2}: {status}  {seconds:7.3f}s (limit {limit:g}s)  "
                                    f"{title}{'  -- ' + note if note else ''}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
