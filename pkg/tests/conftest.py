import pytest

_ACCEPTANCE = []


@pytest.fixture
def record_criterion():
    """Log one acceptance line: ``record_criterion(id, ok, detail)``."""

    def record(cid, ok, detail):
        _ACCEPTANCE.append((cid, bool(ok), detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {cid}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0][1:])):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {cid}: {detail}")
