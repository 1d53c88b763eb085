import pytest

import dunklkit as dk

ACCEPTANCE_LINES = []


def report(criterion: int, ok: bool, detail: str) -> None:
    """Record one acceptance pass/fail line; echoed in the terminal summary."""
    line = f"ACCEPTANCE {criterion:2d} [{'pass' if ok else 'FAIL'}]: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def wb_radial3():
    return dk.radial_workbench(3, 0.0)


@pytest.fixture(scope="session")
def wb_radial5():
    return dk.radial_workbench(5, 0.0)


@pytest.fixture(scope="session")
def wb_rank1_k05():
    return dk.rank1_workbench(0.5)


@pytest.fixture(scope="session")
def rs_rank1_k05():
    return dk.build_root_system("Rank1Z2", 1, [0.5])
