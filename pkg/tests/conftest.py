import pytest

from ordhull.instancefile import fixture_path, load_fixture

# criterion label -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def diamond():
    return load_fixture("diamond_swap")


@pytest.fixture
def chain():
    return load_fixture("chain_invariant")


@pytest.fixture
def gap():
    return load_fixture("fixed_point_gap")


@pytest.fixture
def gap_antichain():
    return load_fixture("fixed_point_gap_antichain")


@pytest.fixture
def swap_antichain():
    return load_fixture("diamond_swap_antichain")


@pytest.fixture
def data_path():
    return fixture_path


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: [int(t) if t.isdigit() else t for t in s.replace(".", " ").split()]):
        ok, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"criterion {label}: {'PASS' if ok else 'FAIL'}  {detail}")
