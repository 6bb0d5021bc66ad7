from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from meanforge.poly import Poly, SymbolTable

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

NAMES = ("c", "a1", "a2", "u")
TABLE = SymbolTable(NAMES)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, table=TABLE, max_terms=4, max_exp=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp) for _ in table.names]),
            rationals,
            max_size=max_terms,
        )
    )
    return Poly(table, terms)


@st.composite
def assignments(draw, table=TABLE):
    return {n: draw(rationals) for n in table.names}


@pytest.fixture
def table():
    return TABLE


def frac(x) -> Fraction:
    return Fraction(x)


# -- acceptance summary ----------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        detail = next((v for k, v in report.user_properties if k == "detail"), "")
        _ACCEPTANCE[name] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[name]
        number, title = name[len("test_criterion_"):].split("_", 1)
        line = f"criterion {int(number):>2} {title.replace('_', ' ')}: {status}"
        terminalreporter.write_line(f"{line}  {detail}" if detail else line)
