import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pdlarg.logic import And, Atom, BOTTOM, Implies, Not, Or, TOP  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def formulas(atoms=("a", "b", "c"), max_leaves=12):
    leaves = st.sampled_from([Atom(a) for a in atoms] + [TOP, BOTTOM])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
