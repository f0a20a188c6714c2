from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(max_num=60, max_den=20):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@pytest.fixture
def polygon_file(tmp_path):
    def write(text, name="poly.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion and assert it."""
    lines = request.config.stash[ACCEPTANCE]
    recorded = []

    def record(number, title, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}" + (f" ({detail})" if detail else "")
        print(line)
        lines.append(line)
        recorded.append(number)
        assert ok, line

    yield record
    if not recorded:
        lines.append(f"FAIL  {request.node.name} raised before reporting")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
