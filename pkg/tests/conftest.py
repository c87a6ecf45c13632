import pytest

from recipenorm.fcdb import load_fcdb
from recipenorm.lexicons import data_path, load_lexicons


@pytest.fixture(scope="session")
def lex():
    return load_lexicons()


@pytest.fixture(scope="session")
def fixture_fcdb(lex):
    return load_fcdb(data_path("fixtures/fcdb.tsv"), lex)


def pytest_terminal_summary(terminalreporter):
    # echo the acceptance verdicts, which are otherwise captured
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
