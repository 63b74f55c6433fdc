import pytest

ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store a criterion's outcome so the summary can list it even when it fails."""
    def _record(number: int, name: str, ok: bool, detail=None):
        ACCEPTANCE[number] = (name, bool(ok), detail)
        print(f"criterion {number:2d} {name}: {'PASS' if ok else 'FAIL'}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[number]
        line = f"criterion {number:2d} {name}: {'PASS' if ok else 'FAIL'}"
        if detail and not ok:
            line += f"  {detail}"
        terminalreporter.write_line(line)
