import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Context manager timing one acceptance criterion and recording a pass/fail line."""

    @contextmanager
    def run(number: int, title: str, limit: float):
        start = time.perf_counter()
        ok, detail = False, ""
        try:
            yield
            ok = True
        except BaseException as exc:
            detail = f" ({type(exc).__name__})"
            raise
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < limit
            status = "PASS" if ok and in_time else "FAIL"
            if ok and not in_time:
                detail = " (over time limit)"
            line = f"criterion {number:2d} {status}  {title}  [{elapsed:.2f}s / limit {limit:g}s]{detail}"
            _CRITERIA[number] = line
            print(line)
        assert in_time, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[k])
