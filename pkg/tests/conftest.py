import json
import sys
from pathlib import Path

import pytest

from hypercone.exactla import Q, RatMatrix

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def derived():
    return json.loads((DATA / "derived.json").read_text())


def qmat(rows):
    return RatMatrix([[Q(x) for x in r] for r in rows])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
