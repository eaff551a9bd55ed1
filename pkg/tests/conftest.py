from pathlib import Path

import pytest

from kbembed.core import parse_presentation
from kbembed.raag import parse_graph
from kbembed.rewriting import parse_system

DATA = Path(__file__).parent / "data"


def data_path(name: str) -> str:
    return str(DATA / name)


@pytest.fixture
def b3():
    return parse_system((DATA / "b3.rws").read_text())


@pytest.fixture
def b3_group():
    return parse_presentation((DATA / "b3.pres").read_text())


@pytest.fixture
def p3():
    return parse_graph((DATA / "p3.g").read_text())


@pytest.fixture
def k3():
    return parse_graph((DATA / "k3.g").read_text())


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
