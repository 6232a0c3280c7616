import pytest

_ACCEPTANCE = []


class _Recorder:
    def __call__(self, criterion, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    def skip(self, criterion, reason):
        line = f"[SKIP] criterion {criterion}: {reason}"
        _ACCEPTANCE.append(line)
        pytest.skip(line)


@pytest.fixture
def acceptance():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
