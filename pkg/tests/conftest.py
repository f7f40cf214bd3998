import functools

import pytest

from kleintft.algebra import from_group
from kleintft.permgroup import symmetric_group


@functools.lru_cache(maxsize=None)
def sym(n):
	return symmetric_group(n)


@functools.lru_cache(maxsize=None)
def alg_of(n):
	return from_group(sym(n))


@pytest.fixture(scope="session")
def algebra():
	return alg_of


_criteria = {}


def pytest_runtest_logreport(report):
	if "test_acceptance.py" not in report.nodeid:
		return
	name = report.nodeid.split("::")[-1]
	if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
		_criteria[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
	if not _criteria:
		return
	terminalreporter.section("acceptance criteria")
	for name in sorted(_criteria, key=lambda s: int(s.split("_")[1][9:]) if s.split("_")[1].startswith("criterion") else 99):
		status = "PASS" if _criteria[name] == "passed" else "FAIL"
		terminalreporter.write_line(f"{status}  {name}")
