import pathlib

import pytest

from tacalc import AlgebraSpec, QQ, build_algebra

EXAMPLES = pathlib.Path(__file__).resolve().parent.parent / "examples"

# one line per acceptance criterion, printed after the test run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def spec_from(variables, relations, field=QQ):
    return AlgebraSpec.from_strings(field, tuple(variables), relations)


@pytest.fixture(scope="session")
def examples_dir():
    return EXAMPLES


@pytest.fixture(scope="session")
def spec_hypersurface():
    return spec_from(("x",), ["x^2"])


@pytest.fixture(scope="session")
def spec_ci2():
    return spec_from(("x", "y"), ["x^2", "y^2"])


@pytest.fixture(scope="session")
def spec_fat_point():
    return spec_from(("x", "y"), ["x^2", "x*y", "y^2"])


@pytest.fixture(scope="session")
def spec_S():
    """12-dimensional Gorenstein algebra on 5 variables, 10 quadrics."""
    from tacalc.cli import parse_algebra_file

    return parse_algebra_file(str(EXAMPLES / "S_beck.alg"))


@pytest.fixture(scope="session")
def spec_Q():
    """8-dimensional non-Gorenstein algebra on 4 variables, 7 quadrics."""
    from tacalc.cli import parse_algebra_file

    return parse_algebra_file(str(EXAMPLES / "Q_beck.alg"))


@pytest.fixture(scope="session")
def alg_hypersurface(spec_hypersurface):
    return build_algebra(spec_hypersurface)


@pytest.fixture(scope="session")
def alg_ci2(spec_ci2):
    return build_algebra(spec_ci2)


@pytest.fixture(scope="session")
def alg_fat_point(spec_fat_point):
    return build_algebra(spec_fat_point)


@pytest.fixture(scope="session")
def alg_S(spec_S):
    return build_algebra(spec_S)


@pytest.fixture(scope="session")
def alg_Q(spec_Q):
    return build_algebra(spec_Q)
