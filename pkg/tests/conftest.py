from __future__ import annotations

import sys

import pytest
from hypothesis import settings

from intbasis import bipoly as B
from intbasis.field import PrimeField

settings.register_profile("intbasis", max_examples=40, deadline=None)
settings.load_profile("intbasis")

P = 10007


@pytest.fixture
def F():
    return PrimeField(P)


def curve(expr_fn, p=P):
    """Build a curve from a lambda over the generators X, Y."""
    X, Y = B.generators(PrimeField(p))
    return expr_fn(X, Y).as_lists()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    report = getattr(mod, "REPORT", None)
    if report:
        terminalreporter.section("acceptance criteria")
        for k in sorted(report):
            terminalreporter.write_line(report[k])
