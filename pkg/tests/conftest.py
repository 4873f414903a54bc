import sys

import numpy as np
import pytest

from screensim import CandidatePool, ScreeningOrder


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # replay the acceptance verdict lines, one per criterion, whether or not
    # the individual tests passed (passing tests keep their stdout otherwise)
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def make_pool():
    def build(scores, protected) -> CandidatePool:
        return CandidatePool(
            np.asarray(scores, dtype=np.float64),
            np.asarray(protected, dtype=bool),
        )

    return build


@pytest.fixture
def identity_order():
    def build(n: int) -> ScreeningOrder:
        return ScreeningOrder(np.arange(n))

    return build
