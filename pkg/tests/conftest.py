import contextlib
import time

import pytest


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def criterion(request):
    """``with criterion(n, text, limit):`` times a block and logs PASS/FAIL.

    The block fails if it raises or runs past ``limit`` seconds.
    """
    lines = request.config.acceptance_lines

    @contextlib.contextmanager
    def run(number, text, limit):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            lines.append(f"FAIL  [{number}] {text} ({elapsed:.2f}s): {type(exc).__name__}: {exc}")
            print(lines[-1])
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        lines.append(f"{'PASS' if ok else 'FAIL'}  [{number}] {text} ({elapsed:.2f}s, limit {limit}s)")
        print(lines[-1])
        assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
