from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"
STANDARD = DATA / "standard"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance criteria report lines, filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
