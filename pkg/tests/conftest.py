import random

import pytest

from eigenwedge import Matrix


@pytest.fixture
def rng():
    return random.Random(1729)


def mat(rows, mode="exact"):
    return Matrix(rows, mode)


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance.LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
